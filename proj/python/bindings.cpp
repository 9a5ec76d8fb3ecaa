#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "fbmgreeks/errors.hpp"
#include "fbmgreeks/fractional_ops.hpp"
#include "fbmgreeks/parallel.hpp"
#include "fbmgreeks/scenario.hpp"

namespace py = pybind11;
using namespace fbmgreeks;

namespace {

py::array_t<double> to_array(const std::vector<double>& v) {
  py::array_t<double> a(static_cast<py::ssize_t>(v.size()));
  std::copy(v.begin(), v.end(), a.mutable_data());
  return a;
}

std::vector<double> from_array(const py::array_t<double, py::array::c_style | py::array::forcecast>& a) {
  if (a.ndim() != 1) throw py::value_error("expected a one-dimensional array");
  return {a.data(), a.data() + a.size()};
}

// Samples on the dyadic grid whose node count matches `values`.
SampledFunction sampled(const std::vector<double>& values, double horizon) {
  const std::size_t steps = values.size() - 1;
  int n2 = 0;
  while ((std::size_t{1} << n2) < steps) ++n2;
  if (values.size() < 3 || (std::size_t{1} << n2) != steps) {
    throw py::value_error("expected 2^n2 + 1 samples with n2 >= 1");
  }
  return {DyadicGrid(n2, horizon), values};
}

py::dict report_dict(const EstimateReport& r) {
  py::dict d;
  d["estimator"] = estimator_cli_name(r.estimator_kind);
  d["theta"] = r.theta;
  d["std"] = r.std;
  d["ci_low"] = r.ci_low;
  d["ci_high"] = r.ci_high;
  d["t_alpha"] = r.t_alpha;
  d["n"] = r.n;
  d["n2"] = r.n2;
  d["horizon"] = r.horizon;
  d["alpha"] = r.alpha;
  d["seed"] = py::make_tuple(r.seed.master, r.seed.stream);
  return d;
}

}  // namespace

PYBIND11_MODULE(_fbmgreeks, m) {
  m.doc() = "Monte Carlo Greeks for SDEs driven by fractional Brownian motion";

  static py::exception<Error> base(m, "Error", PyExc_RuntimeError);
  static py::exception<ConfigError> config(m, "ConfigError", base.ptr());
  static py::exception<DomainError> domain(m, "DomainError", base.ptr());
  static py::exception<NumericalError> numerical(m, "NumericalError", base.ptr());
  static py::exception<IoError> io(m, "IoError", base.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ConfigError& e) {
      PyErr_SetString(config.ptr(), e.what());
    } catch (const DomainError& e) {
      PyErr_SetString(domain.ptr(), e.what());
    } catch (const NumericalError& e) {
      PyErr_SetString(numerical.ptr(), e.what());
    } catch (const IoError& e) {
      PyErr_SetString(io.ptr(), e.what());
    } catch (const Error& e) {
      PyErr_SetString(base.ptr(), e.what());
    }
  });

  m.def("fbm_covariance",
        [](double s, double t, double h) { return fbm_covariance(s, t, HurstParameter(h)); },
        py::arg("s"), py::arg("t"), py::arg("hurst"));

  m.def(
      "sample_fbm",
      [](double h, int n2, std::uint64_t seed, double horizon, const std::string& method) {
        const DyadicGrid grid(n2, horizon);
        const SeedRecord rec{seed, 0};
        if (method == "circulant") return to_array(sample_fbm_circulant(grid, HurstParameter(h), rec).values);
        if (method == "cholesky") return to_array(sample_fbm_cholesky(grid, HurstParameter(h), rec).values);
        throw py::value_error("method must be 'circulant' or 'cholesky'");
      },
      py::arg("hurst"), py::arg("n2"), py::arg("seed") = 0, py::arg("horizon") = 1.0,
      py::arg("method") = "circulant",
      "fBm values at the 2^n2 + 1 grid nodes, starting with 0.");

  m.def(
      "frac_integral",
      [](py::array_t<double, py::array::c_style | py::array::forcecast> psi, double alpha,
         double horizon) { return to_array(frac_integral(sampled(from_array(psi), horizon), alpha).values); },
      py::arg("psi"), py::arg("alpha"), py::arg("horizon") = 1.0);

  m.def(
      "frac_derivative",
      [](py::array_t<double, py::array::c_style | py::array::forcecast> psi, double alpha,
         double horizon) { return to_array(frac_derivative(sampled(from_array(psi), horizon), alpha).values); },
      py::arg("psi"), py::arg("alpha"), py::arg("horizon") = 1.0);

  m.def(
      "volterra_kernel",
      [](double h, double t, double s) { return volterra_kernel_eval(VolterraKernel(HurstParameter(h)), t, s); },
      py::arg("hurst"), py::arg("t"), py::arg("s"));

  m.def(
      "fbm_divergence",
      [](py::array_t<double, py::array::c_style | py::array::forcecast> h_dot, double h,
         py::array_t<double, py::array::c_style | py::array::forcecast> increments, double horizon) {
        const auto inc = from_array(increments);
        return fbm_divergence(sampled(from_array(h_dot), horizon), HurstParameter(h), inc);
      },
      py::arg("h_dot"), py::arg("hurst"), py::arg("brownian_increments"), py::arg("horizon") = 1.0);

  m.def("normal_quantile", &normal_quantile, py::arg("p"));
  m.def(
      "confidence_interval",
      [](double theta, double std, std::size_t n, double alpha) {
        const auto ci = confidence_interval(theta, std, n, alpha);
        return py::make_tuple(ci.low, ci.high);
      },
      py::arg("theta"), py::arg("std"), py::arg("n"), py::arg("alpha") = 0.05);

  m.def(
      "parse_config", [](const std::string& text) { return serialize_config(parse_config(text)); },
      py::arg("text"), "Validates a configuration document and returns its canonical form.");

  m.def(
      "run_config",
      [](const std::string& text, std::size_t threads) {
        set_thread_count(threads);
        const auto cfg = parse_config(text);
        std::ostringstream summary;
        EstimateResult result;
        {
          py::gil_scoped_release release;
          result = run_scenario(cfg, summary);
        }
        py::dict d = report_dict(result.report);
        d["samples"] = to_array(result.samples);
        d["summary"] = summary.str();
        return d;
      },
      py::arg("text"), py::arg("threads") = 0,
      "Runs the configured estimator; returns the report fields, per-path samples and summary.");
}
