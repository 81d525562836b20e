#include "nmskit/nmskit.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "nmskit/commands.hpp"

using namespace nmskit;

struct nmskit_space {
  NmsSpace space;
};

namespace {

thread_local std::string g_last_error;

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (p) std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

template <class F>
nmskit_status guarded(F&& f) {
  try {
    f();
    g_last_error.clear();
    return NMSKIT_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return static_cast<nmskit_status>(e.code());
  } catch (const nlohmann::json::exception& e) {
    g_last_error = std::string("invalid JSON: ") + e.what();
    return NMSKIT_CONFIG;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return NMSKIT_INTERNAL;
  }
}

void need(const void* p, const char* what) {
  if (!p) fail(ErrorCode::invalid_argument, std::string(what) + " is null");
}

NormKernel kernel(const char* name, NormKind kind) {
  need(name, "kernel name");
  NormKernel k = NormKernel::builtin(name);
  if (k.kind() != kind)
    fail(ErrorCode::invalid_argument, std::string("'") + name + "' is a " + std::string(to_string(k.kind())));
  return k;
}

}  // namespace

extern "C" {

const char* nmskit_version(void) { return kToolkitVersion; }

const char* nmskit_last_error(void) { return g_last_error.c_str(); }

void nmskit_string_free(char* s) { std::free(s); }

nmskit_status nmskit_tnorm_apply(const char* name, double s, double t, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = apply_tnorm(kernel(name, NormKind::tnorm), UnitValue(s), UnitValue(t));
  });
}

nmskit_status nmskit_tconorm_apply(const char* name, double s, double t, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = apply_tconorm(kernel(name, NormKind::tconorm), UnitValue(s), UnitValue(t));
  });
}

nmskit_status nmskit_tnorm_residual(const char* name, double e1, double e2, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = tnorm_residual(kernel(name, NormKind::tnorm), UnitValue(e1), UnitValue(e2));
  });
}

nmskit_status nmskit_tconorm_residual(const char* name, double e1, double e2, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = tconorm_residual(kernel(name, NormKind::tconorm), UnitValue(e1), UnitValue(e2));
  });
}

nmskit_status nmskit_space_from_json(const char* json, nmskit_space** out) {
  return guarded([&] {
    need(json, "json");
    need(out, "out");
    *out = new nmskit_space{space_from_json(Json::parse(json))};
  });
}

void nmskit_space_free(nmskit_space* space) { delete space; }

nmskit_status nmskit_space_evaluate(const nmskit_space* space, const char* a, const char* b, double lambda,
                                    double out[3]) {
  return guarded([&] {
    need(space, "space");
    need(a, "a");
    need(b, "b");
    need(out, "out");
    const Universe& u = space->space.universe();
    const DegreesTriple d =
        space->space.evaluate(point_from_json(u, Json::parse(a), "a"), point_from_json(u, Json::parse(b), "b"), lambda);
    out[0] = d.g;
    out[1] = d.b;
    out[2] = d.y;
  });
}

nmskit_status nmskit_space_check_axioms(const nmskit_space* space, const char* options_json, int* passed,
                                        char** report_json) {
  return guarded([&] {
    need(space, "space");
    need(passed, "passed");
    AxiomCheckOptions opt;
    if (options_json) {
      const Json j = Json::parse(options_json);
      reject_unknown_keys(j, {"samples", "seed", "lambda_grid", "tol", "limit_tol", "lambda_max"}, "options");
      if (j.contains("samples")) opt.samples = read_count(j["samples"], "options.samples");
      if (j.contains("seed")) opt.seed = read_count(j["seed"], "options.seed");
      if (j.contains("lambda_grid")) opt.lambda_grid = read_numbers(j["lambda_grid"], "options.lambda_grid");
      if (j.contains("tol")) opt.tol = read_number(j["tol"], "options.tol");
      if (j.contains("limit_tol")) opt.limit_tol = read_number(j["limit_tol"], "options.limit_tol");
      if (j.contains("lambda_max")) opt.lambda_max = read_number(j["lambda_max"], "options.lambda_max");
    }
    const AxiomReport r = check_axioms(space->space, opt);
    *passed = r.passed() ? 1 : 0;
    if (report_json) *report_json = dup(dump_stable(to_json(space->space.universe(), r)));
  });
}

nmskit_status nmskit_run(const char* command, const char* config_json, int timing, int* exit_code,
                         char** report_json, char** text) {
  if (exit_code) *exit_code = exit_usage;
  return guarded([&] {
    need(command, "command");
    need(config_json, "config_json");
    need(exit_code, "exit_code");
    CommandResult r;
    Json config;
    try {
      config = Json::parse(config_json);
    } catch (const nlohmann::json::exception& e) {
      // still produce a report so callers can print something uniform
      config = Json::object();
      r = run_command(command, Json::array());
      r.report["error"] = Json{{"code", "config"}, {"message", std::string("config is not valid JSON: ") + e.what()}};
      r.report["verdict"]["summary"] = r.report["error"]["message"];
      r.text = std::string(kToolkitName) + " " + command + "\nerror (config): config is not valid JSON\n";
    }
    if (r.report.is_null()) r = run_command(command, config, RunOptions{timing != 0});
    *exit_code = r.exit_code;
    if (report_json) *report_json = dup(dump_stable(r.report));
    if (text) *text = dup(r.text);
  });
}

}  // extern "C"
