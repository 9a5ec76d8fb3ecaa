#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fbmgreeks/greeks.hpp"

namespace fbmgreeks {

/// A fully validated experiment description.
///
/// Text form (`#` starts a comment, blank lines ignored):
///
///     scenario  = paper-8.2        # optional preset, explicit keys win
///     estimator = pathwise-delta   # pathwise-vega | weight-delta | finance-mu
///     hurst     = 0.6
///     hurst2    = 0.6              # finance-mu only
///     n2        = 12
///     paths     = 500
///     alpha     = 0.05
///     seed      = 42
///     horizon   = 1
///
///     [model]                      # every estimator except finance-mu
///     x0 = 1
///     drift = constant(0)
///     vol = paper_sigma
///     vol_direction = paper_sigma_tilde
///     payoff = square
///
///     [finance]                    # finance-mu
///     s0 = 1
///     x0 = 0
///     drift = constant(0)
///     vol = paper_sigma
///     mu = constant(0.3)
///     mu_direction = constant(0.1)
///     price_map = identity
///     payoff = square
///
///     [output]
///     report = out/report.json
///     trace = out/trace.csv
struct ScenarioConfig {
  std::string preset;  // empty when none
  EstimatorKind estimator = EstimatorKind::pathwise_delta;
  double hurst = 0.6;
  double hurst2 = 0.6;
  int n2 = 12;
  std::size_t paths = 500;
  double alpha = 0.05;
  std::uint64_t seed = 0;
  double horizon = 1.0;
  ModelSpec model;
  FinanceModelSpec finance;
  std::string report_path;
  std::string trace_path;

  friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

/// `key=value` assignments applied after the document (command-line flags).
/// Keys are qualified for sections, e.g. "model.x0" or "output.report".
using ConfigOverrides = std::vector<std::pair<std::string, std::string>>;

/// Parses and validates; throws ConfigError carrying the line number for
/// syntax and per-key errors, and a list of missing fields otherwise.
ScenarioConfig parse_config(std::string_view text, const ConfigOverrides& overrides = {});

/// Canonical text form; parse_config(serialize_config(c)) == c.
std::string serialize_config(const ScenarioConfig& config);

/// Names accepted by `scenario = ...`.
std::vector<std::string> preset_names();

std::string estimator_cli_name(EstimatorKind kind);

/// Runs the configured estimator, writes the report JSON and trace CSV when
/// their paths are set, and prints the summary table to `out`.
EstimateResult run_scenario(const ScenarioConfig& config, std::ostream& out);

/// Statistics block: value, confidence interval and its length.
void print_summary(std::ostream& out, const ScenarioConfig& config, const EstimateReport& report);

}  // namespace fbmgreeks
