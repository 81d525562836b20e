#pragma once

#include <initializer_list>
#include <string>
#include <string_view>

#include "json.hpp"
#include "nmskit/axioms.hpp"
#include "nmskit/norms.hpp"
#include "nmskit/sequences.hpp"
#include "nmskit/space.hpp"
#include "nmskit/topology.hpp"

namespace nmskit {

using Json = nlohmann::ordered_json;

/// Stable text form: insertion key order, two-space indent, floats as %.12g,
/// non-finite floats as null.
std::string dump_stable(const Json& j);

// --- config reading ---------------------------------------------------------
// All readers throw Error{config} naming the offending key path.

void reject_unknown_keys(const Json& obj, std::initializer_list<std::string_view> allowed,
                         const std::string& path);
const Json& require_key(const Json& obj, const std::string& key, const std::string& path);
double read_number(const Json& j, const std::string& path);
std::size_t read_count(const Json& j, const std::string& path);
std::string read_string(const Json& j, const std::string& path);
bool read_bool(const Json& j, const std::string& path);
std::vector<double> read_numbers(const Json& j, const std::string& path);

/// Space description; see README for the format.
NmsSpace space_from_json(const Json& j, const std::string& path = "space");
Point point_from_json(const Universe& u, const Json& j, const std::string& path);
std::vector<Point> points_from_json(const Universe& u, const Json& j, const std::string& path);
OpenBall ball_from_json(const Universe& u, const Json& j, const std::string& path);

// --- report writing ---------------------------------------------------------

Json point_to_json(const Universe& u, const Point& p);
Json points_to_json(const Universe& u, const std::vector<Point>& ps);
Json degrees_to_json(const DegreesTriple& d);
Json ball_to_json(const Universe& u, const OpenBall& b);

Json to_json(const NormReport& r);
Json to_json(const Universe& u, const Witness& w);
Json to_json(const Universe& u, const AxiomReport& r);
Json to_json(const Universe& u, const CounterexampleResult& r);
Json to_json(const Universe& u, const InteriorBallResult& r);
Json to_json(const Universe& u, const HausdorffResult& r);
Json to_json(const Universe& u, const NbCertificate& r);
Json to_json(const FiniteTopology& t);
Json to_json(const FiniteTopology& t, const NowhereDenseResult& r);
Json to_json(const FiniteTopology& t, const BaireResult& r);
Json to_json(const Universe& u, const BasePrefix& r);
Json to_json(const Universe& u, const ClosureCheckResult& r);
Json to_json(const ConvergenceReport& r);
Json to_json(const Universe& u, const NdzReport& r);
Json to_json(const CompletenessReport& r);
Json to_json(const UniformReport& r);
Json to_json(const ContinuityReport& r);

}  // namespace nmskit
