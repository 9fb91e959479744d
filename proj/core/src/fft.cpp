#include "starq/fft.hpp"

#include <stdexcept>

namespace starq {

bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

namespace {

void transform(std::span<cplx> a, int sign) {
    const std::size_t n = a.size();
    if (!is_pow2(static_cast<int>(n)))
        throw std::invalid_argument("fft: length must be a power of two");
    // bit-reversal permutation
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = sign * 2.0 * M_PI / static_cast<double>(len);
        const cplx wl(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            cplx w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                const cplx u = a[i + k];
                const cplx v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wl;
            }
        }
    }
}

}  // namespace

void fft_inplace(std::span<cplx> data) { transform(data, -1); }

void ifft_inplace(std::span<cplx> data) {
    transform(data, +1);
    const double inv = 1.0 / static_cast<double>(data.size());
    for (auto& x : data) x *= inv;
}

}  // namespace starq
