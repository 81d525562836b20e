// Command-line front end. Talks to the library only through nmskit.h; JSON
// handling here is limited to merging flags into the config.
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "nmskit/nmskit.h"

namespace {

using Json = nlohmann::ordered_json;

constexpr int kUsage = 2;

struct Flags {
  std::string config;
  std::string space;
  std::string task;
  std::optional<long long> samples;
  std::optional<long long> seed;
  std::string lambda_grid;
  std::string epsilon_grid;
  std::optional<double> epsilon;
  std::optional<double> tol;
  std::string out;
  std::string format = "json";
  bool timing = false;
};

std::vector<double> parse_list(const std::string& s, const std::string& flag) {
  std::vector<double> v;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw std::runtime_error(flag + ": '" + item + "' is not a number");
    }
  }
  if (v.empty()) throw std::runtime_error(flag + ": empty list");
  return v;
}

Json build_config(const Flags& f) {
  Json cfg = Json::object();
  if (!f.config.empty()) {
    std::ifstream in(f.config);
    if (!in) throw std::runtime_error("cannot open config '" + f.config + "'");
    try {
      cfg = Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw std::runtime_error("config '" + f.config + "' is not valid JSON: " + e.what());
    }
    if (!cfg.is_object()) throw std::runtime_error("config '" + f.config + "' must hold a JSON object");
    // a space file named inside a config is relative to that config
    if (cfg.contains("space") && cfg["space"].is_string()) {
      const std::filesystem::path sp = cfg["space"].get<std::string>();
      if (sp.is_relative()) cfg["space"] = (std::filesystem::path(f.config).parent_path() / sp).string();
    }
  }
  if (!f.space.empty()) cfg["space"] = f.space;
  if (!f.task.empty()) cfg["task"] = f.task;
  if (f.samples) cfg["samples"] = *f.samples;
  if (f.seed) cfg["seed"] = *f.seed;
  if (!f.lambda_grid.empty()) cfg["lambda_grid"] = parse_list(f.lambda_grid, "--lambda-grid");
  if (!f.epsilon_grid.empty()) cfg["epsilon_grid"] = parse_list(f.epsilon_grid, "--epsilon-grid");
  if (f.epsilon) cfg["epsilon"] = *f.epsilon;
  if (f.tol) cfg["tol"] = *f.tol;
  return cfg;
}

int emit(const std::string& body, const std::string& out) {
  if (out.empty()) {
    std::fputs(body.c_str(), stdout);
    return 0;
  }
  std::ofstream o(out, std::ios::binary);
  if (!o) {
    std::fprintf(stderr, "nmskit: cannot write '%s'\n", out.c_str());
    return kUsage;
  }
  o << body;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Neutrosophic metric space verification toolkit"};
  app.set_version_flag("--version", std::string(nmskit_version()));
  app.require_subcommand(1);

  Flags f;
  const char* commands[][2] = {
      {"check-axioms", "Sample the eighteen space axioms; optional counterexample search"},
      {"topology", "Balls, Hausdorff and boundedness witnesses, finite topologies"},
      {"sequence", "Convergence, Cauchy, NDZ, completeness and uniform convergence probes"},
      {"norms", "Verify t-norm / t-conorm conditions and solve residuals"},
  };
  for (auto& c : commands) {
    CLI::App* sub = app.add_subcommand(c[0], c[1]);
    sub->add_option("config_file", f.config, "JSON config (same as --config)");
    sub->add_option("--config", f.config, "JSON config file");
    sub->add_option("--space", f.space, "space description file (overrides config)");
    sub->add_option("--task", f.task, "task name for topology and sequence");
    sub->add_option("--samples", f.samples, "sample count");
    sub->add_option("--seed", f.seed, "random seed");
    sub->add_option("--lambda-grid", f.lambda_grid, "comma-separated lambda values");
    sub->add_option("--epsilon-grid", f.epsilon_grid, "comma-separated epsilon values");
    sub->add_option("--epsilon", f.epsilon, "epsilon");
    sub->add_option("--tol", f.tol, "tolerance");
    sub->add_option("--out", f.out, "write the report here instead of stdout");
    sub->add_option("--format", f.format, "json or text")->check(CLI::IsMember({"json", "text"}));
    sub->add_flag("--timing", f.timing, "include wall time in the JSON report");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kUsage;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  std::string config;
  try {
    config = build_config(f).dump();
  } catch (const std::exception& e) {
    std::fprintf(stderr, "nmskit: %s\n", e.what());
    return kUsage;
  }

  int exit_code = kUsage;
  char* report = nullptr;
  char* text = nullptr;
  if (nmskit_run(command.c_str(), config.c_str(), f.timing ? 1 : 0, &exit_code, &report, &text) != NMSKIT_OK) {
    std::fprintf(stderr, "nmskit: %s\n", nmskit_last_error());
    return kUsage;
  }
  std::string body = f.format == "text" ? std::string(text) : std::string(report) + "\n";
  if (exit_code == kUsage && f.format == "json") std::fputs(text, stderr);
  nmskit_string_free(report);
  nmskit_string_free(text);
  const int rc = emit(body, f.out);
  return rc != 0 ? rc : exit_code;
}
