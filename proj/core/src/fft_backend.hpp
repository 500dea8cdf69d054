#pragma once

#include <complex>
#include <span>

namespace convboot::detail {

enum class FftDirection { forward, backward };

/// Unnormalized in-place DFT of any length. Sign convention: forward uses
/// exp(-2 pi i k j / N), backward exp(+2 pi i k j / N).
void fft_inplace(std::span<std::complex<double>> data, FftDirection dir);

} // namespace convboot::detail
