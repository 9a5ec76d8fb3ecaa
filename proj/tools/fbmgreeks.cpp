#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>

#include "fbmgreeks/errors.hpp"
#include "fbmgreeks/parallel.hpp"
#include "fbmgreeks/scenario.hpp"

namespace {

using namespace fbmgreeks;

int exit_code(ErrorCategory c) {
  switch (c) {
    case ErrorCategory::config:
    case ErrorCategory::domain: return 2;
    case ErrorCategory::numerical: return 3;
    case ErrorCategory::io: return 4;
  }
  return 1;
}

// Flags shared by every subcommand that reads a scenario.
struct ScenarioFlags {
  std::string config_file;
  std::optional<std::string> scenario, estimator, hurst, hurst2, n2, paths, alpha, seed, horizon;

  void attach(CLI::App* app) {
    app->add_option("-c,--config", config_file, "Configuration file ('-' reads stdin)");
    app->add_option("--scenario", scenario, "Named preset (" + preset_list() + ")");
    app->add_option("--estimator", estimator,
                    "pathwise-delta | pathwise-vega | weight-delta | finance-mu");
    app->add_option("--hurst", hurst, "Hurst index H");
    app->add_option("--hurst2", hurst2, "Hurst index of the volatility factor (finance-mu)");
    app->add_option("--n2", n2, "Grid order, N1 = 2^n2 steps");
    app->add_option("--paths", paths, "Number of Monte Carlo paths");
    app->add_option("--alpha", alpha, "Confidence level parameter");
    app->add_option("--seed", seed, "Master seed");
    app->add_option("--horizon", horizon, "Time horizon T");
  }

  static std::string preset_list() {
    std::string s;
    for (const auto& p : preset_names()) s += (s.empty() ? "" : ", ") + p;
    return s;
  }

  ConfigOverrides overrides() const {
    ConfigOverrides o;
    const auto put = [&](const char* key, const std::optional<std::string>& v) {
      if (v) o.emplace_back(key, *v);
    };
    put("scenario", scenario);
    put("estimator", estimator);
    put("hurst", hurst);
    put("hurst2", hurst2);
    put("n2", n2);
    put("paths", paths);
    put("alpha", alpha);
    put("seed", seed);
    put("horizon", horizon);
    return o;
  }

  ScenarioConfig load(ConfigOverrides extra = {}) const {
    std::string text;
    if (config_file == "-") {
      text.assign(std::istreambuf_iterator<char>(std::cin), {});
    } else if (!config_file.empty()) {
      std::ifstream f(config_file, std::ios::binary);
      if (!f) throw IoError("cannot read config file '" + config_file + "'");
      text.assign(std::istreambuf_iterator<char>(f), {});
    }
    auto o = overrides();
    o.insert(o.end(), extra.begin(), extra.end());
    return parse_config(text, o);
  }
};

std::string g6(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

std::string join_levels(const std::vector<int>& v) {
  std::string s;
  for (int x : v) s += (s.empty() ? "" : " ") + std::to_string(x);
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monte Carlo Greeks for SDEs driven by fractional Brownian motion"};
  app.require_subcommand(1);
  std::size_t threads = 0;
  app.add_option("-j,--threads", threads, "Worker threads (0 = hardware concurrency)");

  ScenarioFlags run_flags;
  std::string out_prefix;
  auto* run = app.add_subcommand("run", "Run an estimator and print the statistics table");
  run_flags.attach(run);
  run->add_option("-o,--out", out_prefix, "Write PREFIX_report.json and PREFIX_trace.csv");

  ScenarioFlags show_flags;
  auto* show = app.add_subcommand("show", "Print the validated configuration in canonical form");
  show_flags.attach(show);

  double path_hurst = 0.6, path_horizon = 1.0;
  int path_n2 = 8;
  std::uint64_t path_seed = 0;
  std::string path_method = "circulant";
  auto* path = app.add_subcommand("path", "Sample one fBm path and print it as CSV");
  path->add_option("--hurst", path_hurst, "Hurst index H");
  path->add_option("--n2", path_n2, "Grid order");
  path->add_option("--seed", path_seed, "Master seed");
  path->add_option("--horizon", path_horizon, "Time horizon T");
  path->add_option("--method", path_method, "circulant | cholesky")
      ->check(CLI::IsMember({"circulant", "cholesky"}));

  ScenarioFlags probe_flags;
  std::vector<int> probe_levels{6, 7, 8, 9, 10};
  auto* probe = app.add_subcommand("probe", "Self-convergence of the Euler scheme for the model");
  probe_flags.attach(probe);
  probe->add_option("--levels", probe_levels, "Increasing grid orders (at least three)");

  CLI11_PARSE(app, argc, argv);

  try {
    set_thread_count(threads);
    if (run->parsed()) {
      ConfigOverrides extra;
      if (!out_prefix.empty()) {
        extra.emplace_back("output.report", out_prefix + "_report.json");
        extra.emplace_back("output.trace", out_prefix + "_trace.csv");
      }
      run_scenario(run_flags.load(extra), std::cout);
    } else if (show->parsed()) {
      std::cout << serialize_config(show_flags.load());
    } else if (path->parsed()) {
      const DyadicGrid grid(path_n2, path_horizon);
      const HurstParameter h(path_hurst);
      const SeedRecord seed{path_seed, 0};
      write_path_csv(std::cout, path_method == "cholesky" ? sample_fbm_cholesky(grid, h, seed)
                                                          : sample_fbm_circulant(grid, h, seed));
    } else if (probe->parsed()) {
      const auto cfg = probe_flags.load();
      const auto table = convergence_probe(cfg.model, HurstParameter(cfg.hurst), probe_levels,
                                           cfg.paths, SeedRecord{cfg.seed, 0}, cfg.horizon);
      std::cout << "levels: " << join_levels(table.levels) << '\n'
                << "n2,error_consecutive,error_vs_reference\n";
      for (std::size_t l = 0; l < table.error_consecutive.size(); ++l) {
        std::cout << table.levels[l] << ',' << g6(table.error_consecutive[l]) << ','
                  << g6(table.error_vs_reference[l]) << '\n';
      }
      const auto order = [](const std::optional<double>& o) { return o ? g6(*o) : "n/a"; };
      std::cout << "fitted order (consecutive): " << order(table.fitted_order) << '\n'
                << "fitted order (vs finest): " << order(table.fitted_order_vs_reference) << '\n';
    }
  } catch (const Error& e) {
    std::cerr << "error[" << to_string(e.category()) << "] " << e.what() << '\n';
    return exit_code(e.category());
  } catch (const std::exception& e) {
    std::cerr << "error[internal] " << e.what() << '\n';
    return 1;
  }
  return 0;
}
