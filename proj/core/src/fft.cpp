#include "scalekit/fft.hpp"

#include <cmath>

#include "scalekit/errors.hpp"

namespace scalekit {

void fft_radix2(std::vector<std::complex<double>>& data, int sign) {
    const std::size_t n = data.size();
    if (n == 0 || (n & (n - 1)) != 0)
        throw DomainError("FFT length must be a nonzero power of two");

    // Bit-reversal permutation.
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(data[i], data[j]);
    }

    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double angle = sign * 2.0 * M_PI / static_cast<double>(len);
        const std::complex<double> wlen(std::cos(angle), std::sin(angle));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                const std::complex<double> a = data[i + k];
                const std::complex<double> b = data[i + k + len / 2] * w;
                data[i + k] = a + b;
                data[i + k + len / 2] = a - b;
                w *= wlen;
            }
        }
    }
}

}  // namespace scalekit
