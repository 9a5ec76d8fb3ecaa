#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace fbmgreeks::detail {

/// In-place forward DFT (sign -1, unnormalized) backed by FFTW. Plans are
/// created once per size under a lock; execution is reentrant.
void fft_forward(std::vector<std::complex<double>>& data);

}  // namespace fbmgreeks::detail
