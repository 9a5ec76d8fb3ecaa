#pragma once

#include <cstddef>

namespace fbmgreeks {

/// Worker threads used by Monte Carlo loops. 0 selects the hardware
/// concurrency. Results never depend on this setting.
void set_thread_count(std::size_t n);
std::size_t thread_count();

}  // namespace fbmgreeks
