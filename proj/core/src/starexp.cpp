#include "starq/starexp.hpp"

#include <cmath>
#include <stdexcept>

#include "starq/parallel.hpp"

namespace starq {

StarExponential::StarExponential(const AlgebraElement& x, double t, const DeformationProfile& prof)
    : x_(x), t_(t), prof_(prof) {
    const double theta = prof.theta();
    const double at = x.alpha * t;
    const double s = t * sinhc(at);  // sinh(alpha t)/alpha
    kappa_ = (2.0 / theta) * x.alpha * s;
    ce_ = x.beta * s / theta;
    cf_ = -x.gamma * s / theta;
    const double extra = 2.0 * prof.p_prime0() * at / (theta * prof.p(0.0));
    amp_ = std::exp(prof.log_p(0.0) + std::log(std::cosh(at)) - prof.log_p(2.0 * at / theta) + extra);
}

double StarExponential::a_phase(double a) const {
    return ce_ * std::exp(-2.0 * a) + cf_ * std::exp(2.0 * a);
}

cplx StarExponential::operator()(OrbitPoint p) const {
    return amp_ * std::polar(1.0, kappa_ * p.l + a_phase(p.a));
}

AnalyticField StarExponential::as_field() const {
    StarExponential copy = *this;
    return AnalyticField([copy](OrbitPoint p) { return copy(p); });
}

StarExponential star_exp(const AlgebraElement& x, double t, const DeformationProfile& prof) {
    return StarExponential(x, t, prof);
}

SampledField multiplier_apply(const StarExponential& ex, const SampledField& f, int n_quad) {
    if (f.domain != Domain::Position)
        throw std::invalid_argument("multiplier_apply: field must be position-domain");
    const GridSpec& g = f.grid;
    const DeformationProfile& prof = ex.profile();
    const double theta = prof.theta();
    const double at = ex.generator().alpha * ex.time();

    // quadrature over v = a - a1 inside the warped band
    const double vmax = 0.5 * std::asinh(theta * g.nyquist() * 0.98 / 2.0);
    const double dv = 2.0 * vmax / n_quad;
    std::vector<double> vq(static_cast<size_t>(n_quad));
    for (int q = 0; q < n_quad; ++q) vq[q] = -vmax + dv * (q + 0.5);
    const std::vector<double> wv = tukey_window(n_quad, 0.10);

    // row spectra of f on the shifted rows a - at/2 at the warped frequencies
    const SampledField fsh = shift_rows(f, -at / 2.0);
    std::vector<double> freqs(static_cast<size_t>(n_quad));
    for (int q = 0; q < n_quad; ++q) freqs[q] = -(2.0 / theta) * std::sinh(2.0 * vq[q]);
    const std::vector<double> lw = tukey_window(g.n_l);

    // amplitude pieces independent of the output row
    std::vector<double> base(static_cast<size_t>(n_quad));
    const double lp0 = prof.log_p(0.0);
    const double lpt = prof.log_p(2.0 * at / theta);
    for (int q = 0; q < n_quad; ++q) {
        const double lpr = prof.log_p(-4.0 * vq[q] / theta) + lpt -
                           prof.log_p((2.0 * at - 4.0 * vq[q]) / theta) - lp0;
        base[q] = wv[q] * dv * std::cosh(at - 2.0 * vq[q]) * std::exp(lpr);
    }
    std::vector<double> out_freq(static_cast<size_t>(n_quad));
    for (int q = 0; q < n_quad; ++q) out_freq[q] = (2.0 / theta) * std::sinh(at - 2.0 * vq[q]);

    const double pref = 2.0 / (M_PI * theta * std::cosh(at)) * ex.amplitude();
    SampledField out(g, Domain::Position);
    parallel_for(static_cast<size_t>(g.n_a), [&](size_t io) {
        const double a = g.a(static_cast<int>(io));
        std::vector<cplx> coef(static_cast<size_t>(n_quad));
        for (int q = 0; q < n_quad; ++q) {
            const cplx fh = nudft_row(fsh, static_cast<int>(io), freqs[q], lw);
            coef[q] = base[q] * std::polar(1.0, ex.a_phase(a - vq[q])) * fh;
        }
        auto dst = out.row(static_cast<int>(io));
        for (int q = 0; q < n_quad; ++q) {
            cplx ph = std::polar(1.0, out_freq[q] * g.l(0));
            const cplx step = std::polar(1.0, out_freq[q] * g.dl());
            const cplx c = pref * coef[q];
            for (int j = 0; j < g.n_l; ++j) {
                dst[j] += c * ph;
                ph *= step;
            }
        }
    });
    return out;
}

double bch_residual(const AlgebraElement& x, const AlgebraElement& y,
                    const DeformationProfile& prof, const SampledField& f) {
    const SampledField lhs = multiplier_apply(star_exp(bch(x, y), 1.0, prof), f);
    const SampledField rhs =
        multiplier_apply(star_exp(x, 1.0, prof), multiplier_apply(star_exp(y, 1.0, prof), f));
    return rel_l2_diff(rhs, lhs);
}

double ode_residual(const AlgebraElement& x, double t, double theta, double dt,
                    const OdeResidualOptions& opt) {
    const GridSpec& g = opt.grid;
    auto window = [&](OrbitPoint p) {
        return std::exp(-(p.l / opt.l_gauss_width) * (p.l / opt.l_gauss_width)) *
               plateau_window(p.a, opt.a_flat, opt.a_end);
    };
    auto windowed = [&](double tt) {
        const AnalyticField e = moyal_star_exp(x, tt, theta);
        SampledField s(g, Domain::Position);
        for (int i = 0; i < g.n_a; ++i)
            for (int j = 0; j < g.n_l; ++j) {
                const OrbitPoint p{g.a(i), g.l(j)};
                s.at(i, j) = e(p) * window(p);
            }
        return s;
    };
    const SampledField ep = windowed(t + dt);
    const SampledField em = windowed(t - dt);
    const SampledField rhs = moment_left_mul(x, windowed(t), theta);
    const cplx i_th(0.0, 1.0 / theta);
    double acc = 0.0;
    for (int i = 0; i < g.n_a; ++i) {
        if (std::abs(g.a(i)) > opt.interior_a) continue;
        for (int j = 0; j < g.n_l; ++j) {
            if (std::abs(g.l(j)) > opt.interior_l) continue;
            const cplx lhs = (ep.at(i, j) - em.at(i, j)) / (2.0 * dt);
            acc += std::norm(lhs - i_th * rhs.at(i, j));
        }
    }
    return std::sqrt(acc);
}

double multiplier_seminorm_scan(const StarExponential& ex, std::span<const SampledField> family,
                                const SeminormIndex& idx) {
    double best = 0.0;
    for (const SampledField& f : family) {
        const double v = schwartz_seminorm(multiplier_apply(ex, f), idx);
        if (v > best) best = v;
    }
    return best;
}

SampledField star_exp_via_pipeline(const AlgebraElement& x, double t,
                                   const DeformationProfile& prof, const GridSpec& grid,
                                   const AnalyticField& window) {
    const double theta = prof.theta();
    const AnalyticField e0 = moyal_star_exp(x, t, theta);
    SampledField s(grid, Domain::Position);
    // scalar from the profile shift of the moment function under T^{-1}
    const double shift = std::exp(2.0 * prof.p_prime0() * x.alpha * t / (theta * prof.p(0.0)));
    for (int i = 0; i < grid.n_a; ++i)
        for (int j = 0; j < grid.n_l; ++j) {
            const OrbitPoint p{grid.a(i), grid.l(j)};
            s.at(i, j) = shift * e0(p) * window(p);
        }
    return apply_T(prof, s);
}

}  // namespace starq
