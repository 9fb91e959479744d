#pragma once

#include <cmath>
#include <complex>
#include <vector>

namespace starq {

using cplx = std::complex<double>;

inline constexpr double kSinghSeriesCut = 1e-4;

// sinh(x)/x with the removable singularity expanded to order 6.
inline double sinhc(double x) {
    if (std::abs(x) < kSinghSeriesCut) {
        const double x2 = x * x;
        return 1.0 + x2 / 6.0 * (1.0 + x2 / 20.0 * (1.0 + x2 / 42.0));
    }
    return std::sinh(x) / x;
}

// x/sinh(x), finite at x = 0.
inline double inv_sinhc(double x) { return 1.0 / sinhc(x); }

// log(cosh(x)) without overflow for large |x|.
inline double log_cosh(double x) {
    const double y = std::abs(x);
    return y + std::log1p(std::exp(-2.0 * y)) - M_LN2;
}

// Tukey (cosine-tapered plateau) weights on n uniform nodes; `frac` is the
// relative ramp width on each side.
inline std::vector<double> tukey_window(int n, double frac = 0.15) {
    std::vector<double> w(static_cast<size_t>(n), 1.0);
    const int m = static_cast<int>(frac * n);
    for (int i = 0; i < m; ++i) {
        const double x = static_cast<double>(i) / m;
        const double v = 0.5 * (1.0 - std::cos(M_PI * x));
        w[i] = v;
        w[n - 1 - i] = v;
    }
    return w;
}

// 1 on |x| <= flat, cosine ramp down to 0 at |x| >= end.
inline double plateau_window(double x, double flat, double end) {
    const double y = std::abs(x);
    if (y <= flat) return 1.0;
    if (y >= end) return 0.0;
    return 0.5 * (1.0 + std::cos(M_PI * (y - flat) / (end - flat)));
}

}  // namespace starq
