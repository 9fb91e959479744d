#include "starq/moyal.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

#include "starq/fft.hpp"
#include "starq/parallel.hpp"

namespace starq {

namespace {

constexpr double kBandBudget = 40.0;

// 8th-order central first derivative; needed so multiplier commutators hold
// well below the 1e-6 covariance tolerance on 256^2 grids.
constexpr std::array<double, 9> kD8{1.0 / 280.0, -4.0 / 105.0, 1.0 / 5.0, -4.0 / 5.0, 0.0,
                                    4.0 / 5.0,   -1.0 / 5.0,   4.0 / 105.0, -1.0 / 280.0};

SampledField d_a(const SampledField& f) {
    const GridSpec& g = f.grid;
    SampledField out(g, f.domain);
    const double inv_h = 1.0 / g.da();
    parallel_for(static_cast<size_t>(g.n_a), [&](size_t i) {
        auto dst = out.row(static_cast<int>(i));
        for (int s = -4; s <= 4; ++s) {
            const double c = kD8[s + 4];
            const int src = static_cast<int>(i) + s;
            if (c == 0.0 || src < 0 || src >= g.n_a) continue;
            auto sr = f.row(src);
            for (int j = 0; j < g.n_l; ++j) dst[j] += c * inv_h * sr[j];
        }
    });
    return out;
}

// Lagrange-8 interpolated row of a (spectral) field at off-grid position.
void interp_row(const SampledField& f, double apos, std::span<cplx> out) {
    const GridSpec& g = f.grid;
    std::fill(out.begin(), out.end(), cplx(0.0));
    const double pos = (apos + g.a_half) / g.da();
    const double fl = std::floor(pos);
    const int base = static_cast<int>(fl) - 3;
    const double t = pos - fl;
    std::array<double, 8> w;
    const double x = 3.0 + t;
    for (int i = 0; i < 8; ++i) {
        double p = 1.0;
        for (int j = 0; j < 8; ++j)
            if (j != i) p *= (x - j) / (i - j);
        w[i] = p;
    }
    for (int r = 0; r < 8; ++r) {
        const int src = base + r;
        if (src < 0 || src >= g.n_a) continue;
        auto srow = f.row(src);
        for (int j = 0; j < g.n_l; ++j) out[j] += w[r] * srow[j];
    }
}

}  // namespace

void check_band_limit(const GridSpec& grid, double theta) {
    if (theta * grid.nyquist() > kBandBudget)
        throw std::invalid_argument("band-limit violation: theta * nyquist exceeds budget");
}

SampledField moyal_product(const SampledField& f, const SampledField& h, double theta) {
    if (!(f.grid == h.grid)) throw std::invalid_argument("moyal_product: grid mismatch");
    if (f.domain != Domain::Position || h.domain != Domain::Position)
        throw std::invalid_argument("moyal_product: fields must be position-domain");
    check_band_limit(f.grid, theta);
    const GridSpec& g = f.grid;
    const int n = g.n_l;
    const SampledField fs = partial_fourier(f);
    const SampledField hs = partial_fourier(h);

    SampledField out_spec(g, Domain::Frequency);
    parallel_for(static_cast<size_t>(g.n_a), [&](size_t irow) {
        const double a = g.a(static_cast<int>(irow));
        // planes of interpolated rows: Fm over the difference index,
        // Hk over the first-slot frequency index
        std::vector<cplx> Fm(static_cast<size_t>(n) * n), Hk(static_cast<size_t>(n) * n);
        for (int mi = 0; mi < n; ++mi) {
            const double m = mi - n / 2;
            interp_row(fs, a + theta * m * g.dxi() / 4.0,
                       {Fm.data() + static_cast<size_t>(mi) * n, static_cast<size_t>(n)});
        }
        for (int k1 = 0; k1 < n; ++k1) {
            interp_row(hs, a - theta * g.xi(k1) / 4.0,
                       {Hk.data() + static_cast<size_t>(k1) * n, static_cast<size_t>(n)});
        }
        auto dst = out_spec.row(static_cast<int>(irow));
        for (int k1 = 0; k1 < n; ++k1) {
            const cplx* hrow = Hk.data() + static_cast<size_t>(k1) * n;
            for (int mi = 0; mi < n; ++mi) {
                const int k = k1 + mi - n / 2;
                if (k < 0 || k >= n) continue;
                dst[k] += Fm[static_cast<size_t>(mi) * n + k1] * hrow[mi];
            }
        }
        const double scale = g.dxi() / (2.0 * M_PI);
        for (int k = 0; k < n; ++k) dst[k] *= scale;
    });
    return inverse_partial_fourier(out_spec);
}

SampledField moment_left_mul(const AlgebraElement& x, const SampledField& f, double theta) {
    if (f.domain != Domain::Position)
        throw std::invalid_argument("moment_left_mul: field must be position-domain");
    check_band_limit(f.grid, theta);
    const GridSpec& g = f.grid;
    SampledField out(g, Domain::Position);

    if (x.alpha != 0.0) {
        const SampledField da = d_a(f);
        const cplx iht(0.0, theta / 2.0);
        for (int i = 0; i < g.n_a; ++i) {
            auto dst = out.row(i);
            auto src = f.row(i);
            auto dsr = da.row(i);
            for (int j = 0; j < g.n_l; ++j)
                dst[j] = x.alpha * (2.0 * g.l(j) * src[j] + iht * dsr[j]);
        }
    }
    if (x.beta != 0.0 || x.gamma != 0.0) {
        SampledField spec = partial_fourier(f);
        for (int i = 0; i < g.n_a; ++i) {
            const double a = g.a(i);
            auto row = spec.row(i);
            for (int k = 0; k < g.n_l; ++k) {
                const double xi = g.xi(k);
                const double me = x.beta == 0.0 ? 0.0 : x.beta * std::exp(-2.0 * a - theta * xi / 2.0);
                const double mf = x.gamma == 0.0 ? 0.0 : -x.gamma * std::exp(2.0 * a + theta * xi / 2.0);
                row[k] *= (me + mf);
            }
        }
        const SampledField part = inverse_partial_fourier(spec);
        for (size_t i = 0; i < out.values.size(); ++i) out.values[i] += part.values[i];
    }
    return out;
}

double covariance_residual(const AlgebraElement& x, const AlgebraElement& y,
                           const SampledField& f, double theta) {
    const SampledField xy = moment_left_mul(x, moment_left_mul(y, f, theta), theta);
    const SampledField yx = moment_left_mul(y, moment_left_mul(x, f, theta), theta);
    const SampledField zb = moment_left_mul(bracket(x, y), f, theta);
    double num = 0.0;
    const cplx it(0.0, theta);
    for (size_t i = 0; i < f.values.size(); ++i)
        num += std::norm(xy.values[i] - yx.values[i] + it * zb.values[i]);
    const double den = f.l2_norm();
    return std::sqrt(num) / (den > 0.0 ? den : 1.0);
}

AnalyticField moyal_star_exp(const AlgebraElement& x, double t, double theta) {
    const double s = t * sinhc(x.alpha * t);  // sinh(alpha t)/alpha
    const double al = x.alpha, be = x.beta, ga = x.gamma;
    return AnalyticField([al, be, ga, s, t, theta](OrbitPoint p) {
        const double phase =
            (2.0 * p.l * al * t + s * (be * std::exp(-2.0 * p.a) - ga * std::exp(2.0 * p.a))) / theta;
        return std::polar(1.0, phase);
    });
}

SampledField moyal_exp_apply(const AlgebraElement& x, double t, double theta,
                             const SampledField& f) {
    if (f.domain != Domain::Position)
        throw std::invalid_argument("moyal_exp_apply: field must be position-domain");
    check_band_limit(f.grid, theta);
    const GridSpec& g = f.grid;
    const double c1 = 2.0 * x.alpha * t / theta;
    const double s = t * sinhc(x.alpha * t);

    SampledField spec = partial_fourier(shift_rows(f, -theta * c1 / 4.0));
    for (int i = 0; i < g.n_a; ++i) {
        auto row = spec.row(i);
        for (int k = 0; k < g.n_l; ++k) {
            const double ash = g.a(i) + theta * g.xi(k) / 4.0;
            const double gph =
                s * (x.beta * std::exp(-2.0 * ash) - x.gamma * std::exp(2.0 * ash)) / theta;
            row[k] *= std::polar(1.0, gph);
        }
    }
    SampledField out = inverse_partial_fourier(spec);
    for (int i = 0; i < g.n_a; ++i) {
        auto row = out.row(i);
        for (int j = 0; j < g.n_l; ++j) row[j] *= std::polar(1.0, c1 * g.l(j));
    }
    return out;
}

}  // namespace starq
