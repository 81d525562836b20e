#include "nmskit/snn.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nmskit/error.hpp"

namespace nmskit {

namespace {

void check_component(double x, const char* name) {
  require(x >= 0.0 && x <= 1.0, ErrorCode::domain,
          std::string("SNN component ") + name + " = " + std::to_string(x) + " is outside [0, 1]");
}

// Rounding can push a closed-form result a few ulps past the interval ends.
double clamp_unit(double x) { return std::clamp(x, 0.0, 1.0); }

double prob_sum(double a, double b) { return clamp_unit(a + b - a * b); }

void check_alpha(double alpha) {
  require(std::isfinite(alpha) && alpha > 0.0, ErrorCode::invalid_argument,
          "SNN scalar must be positive, got " + std::to_string(alpha));
}

}  // namespace

Snn::Snn(double g, double b, double y) : g_(g), b_(b), y_(y) {
  check_component(g, "g");
  check_component(b, "b");
  check_component(y, "y");
}

Snn snn_add(const Snn& u, const Snn& v) {
  return {prob_sum(u.g(), v.g()), prob_sum(u.b(), v.b()), prob_sum(u.y(), v.y())};
}

Snn snn_multiply(const Snn& u, const Snn& v) {
  return {u.g() * v.g(), u.b() * v.b(), u.y() * v.y()};
}

Snn snn_scale(double alpha, const Snn& u) {
  check_alpha(alpha);
  auto f = [alpha](double x) { return clamp_unit(1.0 - std::pow(1.0 - x, alpha)); };
  return {f(u.g()), f(u.b()), f(u.y())};
}

Snn snn_power(double alpha, const Snn& u) {
  check_alpha(alpha);
  auto f = [alpha](double x) { return clamp_unit(std::pow(x, alpha)); };
  return {f(u.g()), f(u.b()), f(u.y())};
}

bool snn_included(const Snn& u, const Snn& v) {
  return u.g() <= v.g() && u.b() >= v.b() && u.y() >= v.y();
}

}  // namespace nmskit
