#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <memory>
#include <mutex>

namespace fbmgreeks::detail {
namespace {

struct PlanDeleter {
  void operator()(fftw_plan_s* plan) const { fftw_destroy_plan(plan); }
};
using PlanHandle = std::unique_ptr<fftw_plan_s, PlanDeleter>;

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

fftw_plan forward_plan(std::size_t n) {
  static std::map<std::size_t, PlanHandle> plans;
  std::lock_guard lock(planner_mutex());
  auto it = plans.find(n);
  if (it == plans.end()) {
    std::vector<std::complex<double>> scratch(n);
    auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
    fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(n), buf, buf, FFTW_FORWARD,
                                      FFTW_ESTIMATE | FFTW_UNALIGNED);
    it = plans.emplace(n, PlanHandle(plan)).first;
  }
  return it->second.get();
}

}  // namespace

void fft_forward(std::vector<std::complex<double>>& data) {
  if (data.empty()) return;
  fftw_plan plan = forward_plan(data.size());
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plan, buf, buf);
}

}  // namespace fbmgreeks::detail
