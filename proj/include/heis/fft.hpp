#pragma once

#include <complex>
#include <vector>

namespace heis::fft {

using cdouble = std::complex<double>;

// In-place radix-2 transform; size must be a power of two.
// Forward convention: X_k = sum_n x_n e^{-2 pi i k n / N} (no normalisation).
void fft_pow2(std::vector<cdouble>& a, bool inverse);

// Any length, via radix-2 when possible and Bluestein's chirp-z otherwise.
// Same convention and cost O(N log N).
void dft(std::vector<cdouble>& a, bool inverse);

}  // namespace heis::fft
