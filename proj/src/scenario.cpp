#include "fbmgreeks/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "fbmgreeks/errors.hpp"
#include "fbmgreeks/fractional_ops.hpp"
#include "text_util.hpp"

namespace fbmgreeks {
namespace {

constexpr std::string_view kKnownKeys[] = {
    "scenario", "estimator", "hurst", "hurst2", "n2", "paths", "alpha", "seed", "horizon",
    "model.x0", "model.drift", "model.vol", "model.vol_direction", "model.payoff",
    "finance.s0", "finance.x0", "finance.drift", "finance.vol", "finance.mu",
    "finance.mu_direction", "finance.price_map", "finance.payoff",
    "output.report", "output.trace",
};

constexpr std::string_view kSections[] = {"model", "finance", "output"};

struct Entry {
  std::string value;
  int line = 0;  // 0: command line or preset
};

using RawConfig = std::map<std::string, Entry, std::less<>>;

bool known_key(std::string_view key) {
  return std::find(std::begin(kKnownKeys), std::end(kKnownKeys), key) != std::end(kKnownKeys);
}

const std::map<std::string, RawConfig, std::less<>>& presets() {
  static const std::map<std::string, RawConfig, std::less<>> table = {
      {"paper-8.2",
       {
           {"estimator", {"pathwise-delta"}},
           {"hurst", {"0.6"}},
           {"n2", {"15"}},
           {"paths", {"500"}},
           {"alpha", {"0.05"}},
           {"model.x0", {"1"}},
           {"model.drift", {"constant(0)"}},
           {"model.vol", {"paper_sigma"}},
           {"model.vol_direction", {"paper_sigma_tilde"}},
           {"model.payoff", {"square"}},
       }},
  };
  return table;
}

RawConfig parse_raw(std::string_view text) {
  RawConfig raw;
  std::string section;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto end = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) {
      if (end == text.size()) break;
      continue;
    }
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("unterminated section header", line_no);
      const auto name = detail::trim(line.substr(1, line.size() - 2));
      if (std::find(std::begin(kSections), std::end(kSections), name) == std::end(kSections)) {
        throw ConfigError("unknown section [" + std::string(name) + "]", line_no);
      }
      section = name;
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError("expected 'key = value'", line_no);
    const auto key = detail::trim(line.substr(0, eq));
    const auto value = detail::trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("missing key before '='", line_no);
    if (value.empty()) throw ConfigError("missing value for '" + std::string(key) + "'", line_no);
    const std::string qualified = section.empty() ? std::string(key) : section + "." + std::string(key);
    if (!known_key(qualified)) throw ConfigError("unknown key '" + qualified + "'", line_no);
    if (raw.contains(qualified)) throw ConfigError("duplicate key '" + qualified + "'", line_no);
    raw.emplace(qualified, Entry{std::string(value), line_no});
    if (end == text.size()) break;
  }
  return raw;
}

EstimatorKind parse_estimator(std::string_view name, int line) {
  for (auto kind : {EstimatorKind::pathwise_delta, EstimatorKind::pathwise_vega,
                    EstimatorKind::weight_delta, EstimatorKind::finance_mu}) {
    if (estimator_cli_name(kind) == name) return kind;
  }
  throw ConfigError("unknown estimator '" + std::string(name) +
                        "' (expected pathwise-delta, pathwise-vega, weight-delta or finance-mu)",
                    line);
}

class Reader {
 public:
  explicit Reader(const RawConfig& raw) : raw_(raw) {}

  bool has(std::string_view key) const { return raw_.find(key) != raw_.end(); }
  int line(std::string_view key) const { return has(key) ? raw_.find(key)->second.line : 0; }

  template <class Parse>
  auto get(std::string_view key, Parse&& parse) const {
    const auto& e = raw_.find(key)->second;
    try {
      return parse(std::string_view(e.value));
    } catch (const ConfigError& err) {
      throw ConfigError(std::string(key) + ": " + err.what(), e.line);
    }
  }

  double real(std::string_view key) const { return get(key, detail::parse_double); }
  long long integer(std::string_view key) const { return get(key, detail::parse_integer); }
  ScalarFunction function(std::string_view key) const { return get(key, ScalarFunction::parse); }
  const std::string& text(std::string_view key) const { return raw_.find(key)->second.value; }

  void require(std::vector<std::string>& missing, std::initializer_list<std::string_view> keys) const {
    for (auto k : keys)
      if (!has(k)) missing.emplace_back(k);
  }

 private:
  const RawConfig& raw_;
};

ScenarioConfig build_config(const RawConfig& raw) {
  const Reader r(raw);
  ScenarioConfig c;
  if (r.has("scenario")) c.preset = r.text("scenario");

  std::vector<std::string> missing;
  r.require(missing, {"estimator", "hurst", "n2", "paths"});
  if (r.has("estimator")) {
    c.estimator = parse_estimator(r.text("estimator"), r.line("estimator"));
    if (c.estimator == EstimatorKind::finance_mu) {
      r.require(missing, {"hurst2", "finance.s0", "finance.x0", "finance.vol", "finance.mu",
                          "finance.mu_direction", "finance.payoff"});
    } else {
      r.require(missing, {"model.x0", "model.vol", "model.payoff"});
      if (c.estimator == EstimatorKind::pathwise_vega) r.require(missing, {"model.vol_direction"});
    }
  }
  if (!missing.empty()) {
    std::string list;
    for (const auto& m : missing) list += (list.empty() ? "" : ", ") + m;
    throw ConfigError("missing required field(s): " + list);
  }

  const auto check = [&](bool ok, std::string_view key, const std::string& msg) {
    if (!ok) throw ConfigError(std::string(key) + ": " + msg, r.line(key));
  };

  c.hurst = r.real("hurst");
  check(c.hurst > 0.0 && c.hurst < 1.0, "hurst", "must lie in (0,1)");
  const bool weight = c.estimator == EstimatorKind::weight_delta;
  if (weight) {
    check(c.hurst >= 0.5, "hurst", "weight-delta requires hurst >= 1/2");
  } else {
    check(c.hurst > 0.5, "hurst",
          estimator_cli_name(c.estimator) + " requires hurst > 1/2 (Young regime of the solvers)");
  }
  if (r.has("hurst2")) {
    c.hurst2 = r.real("hurst2");
    check(c.hurst2 > 0.0 && c.hurst2 < 1.0, "hurst2", "must lie in (0,1)");
    if (c.estimator == EstimatorKind::finance_mu)
      check(c.hurst2 > 0.5, "hurst2", "finance-mu requires hurst2 > 1/2");
  }

  const long long n2 = r.integer("n2");
  const int max_n2 = weight ? kMaxTableOrder : DyadicGrid::kMaxOrder;
  check(n2 >= 1 && n2 <= max_n2, "n2", "must lie in [1," + std::to_string(max_n2) + "]");
  c.n2 = static_cast<int>(n2);

  const long long paths = r.integer("paths");
  check(paths >= 2, "paths", "must be at least 2");
  c.paths = static_cast<std::size_t>(paths);

  if (r.has("alpha")) {
    c.alpha = r.real("alpha");
    check(c.alpha > 0.0 && c.alpha < 1.0, "alpha", "must lie in (0,1)");
  }
  if (r.has("seed")) c.seed = r.get("seed", detail::parse_unsigned);
  if (r.has("horizon")) {
    c.horizon = r.real("horizon");
    check(c.horizon > 0.0 && std::isfinite(c.horizon), "horizon", "must be positive");
  }

  if (r.has("model.x0")) c.model.x0 = r.real("model.x0");
  if (r.has("model.drift")) c.model.drift = r.function("model.drift");
  if (r.has("model.vol")) c.model.vol = r.function("model.vol");
  if (r.has("model.vol_direction")) c.model.vol_direction = r.function("model.vol_direction");
  if (r.has("model.payoff")) c.model.payoff = r.function("model.payoff");

  if (r.has("finance.s0")) c.finance.s0 = r.real("finance.s0");
  if (r.has("finance.x0")) c.finance.x0 = r.real("finance.x0");
  if (r.has("finance.drift")) c.finance.drift = r.function("finance.drift");
  if (r.has("finance.vol")) c.finance.vol = r.function("finance.vol");
  if (r.has("finance.mu")) c.finance.mu = r.function("finance.mu");
  if (r.has("finance.mu_direction")) c.finance.mu_direction = r.function("finance.mu_direction");
  if (r.has("finance.price_map")) c.finance.price_map = r.function("finance.price_map");
  if (r.has("finance.payoff")) c.finance.payoff = r.function("finance.payoff");
  c.finance.h1 = HurstParameter(c.hurst);
  c.finance.h2 = HurstParameter(c.hurst2);

  if (r.has("output.report")) c.report_path = r.text("output.report");
  if (r.has("output.trace")) c.trace_path = r.text("output.trace");
  return c;
}

}  // namespace

std::string estimator_cli_name(EstimatorKind kind) {
  switch (kind) {
    case EstimatorKind::pathwise_delta: return "pathwise-delta";
    case EstimatorKind::pathwise_vega: return "pathwise-vega";
    case EstimatorKind::weight_delta: return "weight-delta";
    case EstimatorKind::finance_mu: return "finance-mu";
  }
  return "unknown";
}

std::vector<std::string> preset_names() {
  std::vector<std::string> names;
  for (const auto& [name, _] : presets()) names.push_back(name);
  return names;
}

ScenarioConfig parse_config(std::string_view text, const ConfigOverrides& overrides) {
  RawConfig raw = parse_raw(text);
  for (const auto& [key, value] : overrides) {
    if (!known_key(key)) throw ConfigError("unknown option '" + key + "'");
    if (detail::trim(value).empty()) throw ConfigError("missing value for '" + key + "'");
    raw[key] = Entry{std::string(detail::trim(value)), 0};
  }
  if (auto it = raw.find("scenario"); it != raw.end()) {
    const auto p = presets().find(it->second.value);
    if (p == presets().end()) {
      throw ConfigError("unknown scenario preset '" + it->second.value + "'", it->second.line);
    }
    for (const auto& [key, entry] : p->second) raw.try_emplace(key, entry);
  }
  return build_config(raw);
}

std::string serialize_config(const ScenarioConfig& c) {
  using detail::format_double_exact;
  std::ostringstream os;
  if (!c.preset.empty()) os << "scenario = " << c.preset << '\n';
  os << "estimator = " << estimator_cli_name(c.estimator) << '\n'
     << "hurst = " << format_double_exact(c.hurst) << '\n'
     << "hurst2 = " << format_double_exact(c.hurst2) << '\n'
     << "n2 = " << c.n2 << '\n'
     << "paths = " << c.paths << '\n'
     << "alpha = " << format_double_exact(c.alpha) << '\n'
     << "seed = " << c.seed << '\n'
     << "horizon = " << format_double_exact(c.horizon) << '\n';

  const ScenarioConfig defaults;
  const bool finance = c.estimator == EstimatorKind::finance_mu;
  if (!finance || !(c.model == defaults.model)) {
    os << "\n[model]\n"
       << "x0 = " << format_double_exact(c.model.x0) << '\n'
       << "drift = " << c.model.drift.to_string() << '\n'
       << "vol = " << c.model.vol.to_string() << '\n';
    if (c.model.vol_direction) os << "vol_direction = " << c.model.vol_direction->to_string() << '\n';
    os << "payoff = " << c.model.payoff.to_string() << '\n';
  }
  auto fin_defaults = defaults.finance;
  fin_defaults.h1 = c.finance.h1;
  fin_defaults.h2 = c.finance.h2;
  if (finance || !(c.finance == fin_defaults)) {
    const auto& f = c.finance;
    os << "\n[finance]\n"
       << "s0 = " << format_double_exact(f.s0) << '\n'
       << "x0 = " << format_double_exact(f.x0) << '\n'
       << "drift = " << f.drift.to_string() << '\n'
       << "vol = " << f.vol.to_string() << '\n'
       << "mu = " << f.mu.to_string() << '\n'
       << "mu_direction = " << f.mu_direction.to_string() << '\n'
       << "price_map = " << f.price_map.to_string() << '\n'
       << "payoff = " << f.payoff.to_string() << '\n';
  }
  if (!c.report_path.empty() || !c.trace_path.empty()) {
    os << "\n[output]\n";
    if (!c.report_path.empty()) os << "report = " << c.report_path << '\n';
    if (!c.trace_path.empty()) os << "trace = " << c.trace_path << '\n';
  }
  return os.str();
}

void print_summary(std::ostream& out, const ScenarioConfig& c, const EstimateReport& r) {
  using detail::format_double6;
  const auto row = [&](std::string_view label, const std::string& value) {
    out << label << std::string(label.size() < 28 ? 28 - label.size() : 1, ' ') << value << '\n';
  };
  out << "Statistics                  Values\n";
  row("estimator", estimator_cli_name(r.estimator_kind));
  row("H", format_double6(c.hurst) +
               (c.estimator == EstimatorKind::finance_mu ? " / " + format_double6(c.hurst2) : ""));
  row("N2 / n", std::to_string(r.n2) + " / " + std::to_string(r.n));
  row("Theta", format_double6(r.theta));
  row(format_double6(r.alpha) + "-confidence interval",
      "[" + format_double6(r.ci_low) + ";" + format_double6(r.ci_high) + "]");
  row("CI's length", format_double6(r.ci_high - r.ci_low));
  row("std", format_double6(r.std));
}

EstimateResult run_scenario(const ScenarioConfig& c, std::ostream& out) {
  const DyadicGrid grid(c.n2, c.horizon);
  const HurstParameter h(c.hurst);
  const MonteCarloOptions opts{c.paths, c.alpha, SeedRecord{c.seed, 0}};

  EstimateResult result;
  switch (c.estimator) {
    case EstimatorKind::pathwise_delta: result = pathwise_delta(c.model, grid, h, opts); break;
    case EstimatorKind::pathwise_vega: result = pathwise_vega(c.model, grid, h, opts); break;
    case EstimatorKind::weight_delta: result = weight_delta(c.model, grid, h, opts); break;
    case EstimatorKind::finance_mu: result = finance_mu_sensitivity(c.finance, grid, opts); break;
  }

  if (!c.report_path.empty()) {
    std::ofstream f(c.report_path, std::ios::binary);
    if (!f) throw IoError("cannot open report file '" + c.report_path + "'");
    f << report_to_json(result.report) << '\n';
    if (!f) throw IoError("failed writing report file '" + c.report_path + "'");
  }
  if (!c.trace_path.empty()) {
    std::ofstream f(c.trace_path, std::ios::binary);
    if (!f) throw IoError("cannot open trace file '" + c.trace_path + "'");
    write_trace_csv(f, result.trace);
    if (!f) throw IoError("failed writing trace file '" + c.trace_path + "'");
  }
  print_summary(out, c, result.report);
  return result;
}

}  // namespace fbmgreeks
