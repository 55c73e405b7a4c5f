#pragma once

#include <complex>
#include <vector>

namespace scalekit {

/// In-place iterative radix-2 Cooley-Tukey transform. sign = -1 for the
/// forward convention exp(-i 2 pi j k / n), +1 for the inverse kernel
/// (without the 1/n factor). Length must be a power of two.
void fft_radix2(std::vector<std::complex<double>>& data, int sign);

}  // namespace scalekit
