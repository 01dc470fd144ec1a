#pragma once

// Thin FFTW wrapper. Plans are created with FFTW_ESTIMATE so the chosen
// algorithm (and therefore every output bit) does not depend on timing.

#include <span>
#include <vector>

#include "oising/types.hpp"

namespace oising::detail {

/// X_k = sum_n x_n exp(-2 pi i n k / L), no normalization.
std::vector<Complex> fft_forward(std::span<const Complex> x);
/// x_n = sum_k X_k exp(+2 pi i n k / L), no normalization.
std::vector<Complex> fft_backward(std::span<const Complex> x);

std::vector<Complex> fft_forward_real(std::span<const double> x);

}  // namespace oising::detail
