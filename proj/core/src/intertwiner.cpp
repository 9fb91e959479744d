#include "starq/intertwiner.hpp"

#include <cmath>
#include <stdexcept>

#include "starq/parallel.hpp"

namespace starq {

OrbitPoint warp_forward(double theta, OrbitPoint p) {
    return {p.a, (2.0 / theta) * std::sinh(theta * p.l / 2.0)};
}

OrbitPoint warp_inverse(double theta, OrbitPoint p) {
    return {p.a, (2.0 / theta) * std::asinh(theta * p.l / 2.0)};
}

namespace {

SampledField warp_resample(const DeformationProfile& prof, const SampledField& f, bool forward) {
    if (f.domain != Domain::Position)
        throw std::invalid_argument("apply_T: field must be position-domain");
    const GridSpec& g = f.grid;
    const double theta = prof.theta();
    const double cut = g.nyquist();
    std::vector<double> s(static_cast<size_t>(g.n_l));
    std::vector<double> logw(static_cast<size_t>(g.n_l));
    std::vector<bool> live(static_cast<size_t>(g.n_l), true);
    for (int k = 0; k < g.n_l; ++k) {
        const double sig = g.xi(k);
        if (forward) {
            // output spectrum at sigma needs the input spectrum at
            // s = (2/th) asinh(th sigma / 2), divided by P(s)
            s[k] = (2.0 / theta) * std::asinh(theta * sig / 2.0);
            logw[k] = prof.log_p(0.0) - prof.log_p(s[k]);
        } else {
            // inverse: input spectrum at the sinh-warped frequency, times P
            s[k] = (2.0 / theta) * std::sinh(theta * sig / 2.0);
            logw[k] = prof.log_p(sig) - prof.log_p(0.0);
            if (std::abs(s[k]) > cut) live[k] = false;  // beyond the band: spectrum is zero
        }
    }
    const std::vector<double> lw = tukey_window(g.n_l);
    SampledField spec(g, Domain::Frequency);
    parallel_for(static_cast<size_t>(g.n_a), [&](size_t i) {
        auto dst = spec.row(static_cast<int>(i));
        for (int k = 0; k < g.n_l; ++k)
            dst[k] = live[k] ? std::exp(logw[k]) * nudft_row(f, static_cast<int>(i), s[k], lw)
                             : cplx(0.0);
    });
    return inverse_partial_fourier(spec);
}

// Quadrature oversampling along a: the row spectra enter at warped
// frequencies whose a-derivative scales like 4/theta, so small theta needs
// sub-grid quadrature nodes to resolve the integrand.
int a_oversampling(const GridSpec& g, double theta) {
    const int r = static_cast<int>(std::ceil(20.0 * g.da() / theta));
    return std::clamp(r, 1, 12);
}

// Field rows replicated on the refined a-lattice: fine index fr corresponds
// to position a_min + fr * (da / r); values from Lagrange row interpolation.
struct FineRows {
    int r = 1;
    std::vector<SampledField> shifted;  // shifted[s] rows sit at a_i + s*da/r

    const cplx* row(int fine_index) const {
        const int k = fine_index / r, s = fine_index - k * r;
        return shifted[static_cast<size_t>(s)].row(k).data();
    }
};

FineRows make_fine_rows(const SampledField& f, int r) {
    FineRows out;
    out.r = r;
    out.shifted.reserve(static_cast<size_t>(r));
    out.shifted.push_back(f);
    for (int s = 1; s < r; ++s)
        out.shifted.push_back(shift_rows(f, s * f.grid.da() / r));
    return out;
}

// Tapered spectrum of one fine row at a single frequency.
cplx fine_nudft(const FineRows& fr, const GridSpec& g, int fine_index, double xi,
                std::span<const double> lw) {
    const cplx* row = fr.row(fine_index);
    cplx ph = std::polar(1.0, -xi * g.l(0));
    const cplx step = std::polar(1.0, -xi * g.dl());
    cplx acc = 0.0;
    for (int j = 0; j < g.n_l; ++j) {
        acc += lw[j] * row[j] * ph;
        ph *= step;
    }
    return acc * g.dl();
}

struct ProductTables {
    int r = 1;        // oversampling factor
    int band = 0;     // max fine offset with representable warped frequency
    std::vector<cplx> tf;    // [fine row][offset + band]
    std::vector<cplx> th;
    std::vector<double> lp;  // log P at fine-offset arguments, [offset + 2*band]
    std::vector<double> csh; // cosh(2 delta h), [delta + 2*band]
    double h = 0.0;          // fine spacing da / r
};

ProductTables build_tables(const SampledField& f, const SampledField& h,
                           const DeformationProfile& prof) {
    const GridSpec& g = f.grid;
    const double theta = prof.theta();
    ProductTables t;
    t.r = a_oversampling(g, theta);
    t.h = g.da() / t.r;
    t.band = static_cast<int>(0.5 * std::asinh(theta * g.nyquist() / 2.0) / t.h);
    t.band = std::min(t.band, g.n_a * t.r - 1);
    const int nb = 2 * t.band + 1;
    const int nrows = g.n_a * t.r;
    const FineRows ff = make_fine_rows(f, t.r);
    const FineRows fh = make_fine_rows(h, t.r);
    std::vector<double> freqs(static_cast<size_t>(nb));
    for (int d = -t.band; d <= t.band; ++d)
        freqs[d + t.band] = -(2.0 / theta) * std::sinh(2.0 * d * t.h);
    const std::vector<double> lw = tukey_window(g.n_l);
    t.tf.resize(static_cast<size_t>(nrows) * nb);
    t.th.resize(static_cast<size_t>(nrows) * nb);
    parallel_for(static_cast<size_t>(nrows), [&](size_t i) {
        for (int q = 0; q < nb; ++q) {
            t.tf[i * nb + q] = fine_nudft(ff, g, static_cast<int>(i), freqs[q], lw);
            t.th[i * nb + q] = fine_nudft(fh, g, static_cast<int>(i), freqs[q], lw);
        }
    });
    t.lp.resize(static_cast<size_t>(4 * t.band + 1));
    t.csh.resize(static_cast<size_t>(4 * t.band + 1));
    for (int d = -2 * t.band; d <= 2 * t.band; ++d) {
        t.lp[d + 2 * t.band] = prof.log_p(4.0 * d * t.h / theta);
        t.csh[d + 2 * t.band] = std::cosh(2.0 * d * t.h);
    }
    return t;
}

}  // namespace

SampledField apply_T(const DeformationProfile& prof, const SampledField& f) {
    return warp_resample(prof, f, true);
}

SampledField apply_T_inv(const DeformationProfile& prof, const SampledField& f) {
    return warp_resample(prof, f, false);
}

SampledField invariant_product(const SampledField& f, const SampledField& h,
                               const DeformationProfile& prof) {
    if (!(f.grid == h.grid)) throw std::invalid_argument("invariant_product: grid mismatch");
    if (f.domain != Domain::Position || h.domain != Domain::Position)
        throw std::invalid_argument("invariant_product: fields must be position-domain");
    const GridSpec& g = f.grid;
    const double theta = prof.theta();
    const ProductTables t = build_tables(f, h, prof);
    const int nb = 2 * t.band + 1;
    const int nrows = g.n_a * t.r;
    // taper on the fine a-lattice
    const std::vector<double> wa = tukey_window(nrows);
    const double lp0 = prof.log_p(0.0);
    const double scale = 4.0 / (M_PI * M_PI * theta * theta) * t.h * t.h;

    SampledField out(g, Domain::Position);
    parallel_for(static_cast<size_t>(g.n_a), [&](size_t io_) {
        const int io = static_cast<int>(io_) * t.r;  // output sits on the fine lattice
        std::vector<cplx> S(static_cast<size_t>(4 * t.band + 1));
        const int i1lo = std::max(0, io - t.band), i1hi = std::min(nrows - 1, io + t.band);
        for (int i1 = i1lo; i1 <= i1hi; ++i1) {
            const double lp1 = t.lp[(i1 - io) + 2 * t.band];
            const cplx* tf1 = &t.tf[static_cast<size_t>(i1) * nb];
            for (int i2 = i1lo; i2 <= i1hi; ++i2) {
                const int delta = i1 - i2;
                const double lpr = lp1 + t.lp[(io - i2) + 2 * t.band] -
                                   t.lp[delta + 2 * t.band] - lp0;
                const double w = wa[i1] * wa[i2] * t.csh[delta + 2 * t.band] * std::exp(lpr);
                S[delta + 2 * t.band] += w * tf1[(i2 - io) + t.band] *
                    t.th[static_cast<size_t>(i2) * nb + (io - i1) + t.band];
            }
        }
        auto dst = out.row(static_cast<int>(io_));
        for (int delta = -2 * t.band; delta <= 2 * t.band; ++delta) {
            const cplx s = S[delta + 2 * t.band];
            if (s == cplx(0.0)) continue;
            const double freq = (2.0 / theta) * std::sinh(2.0 * delta * t.h);
            cplx ph = std::polar(1.0, freq * g.l(0));
            const cplx step = std::polar(1.0, freq * g.dl());
            for (int j = 0; j < g.n_l; ++j) {
                dst[j] += s * ph;
                ph *= step;
            }
        }
        for (int j = 0; j < g.n_l; ++j) dst[j] *= scale;
    });
    return out;
}

std::vector<cplx> invariant_product_at(const SampledField& f, const SampledField& h,
                                       const DeformationProfile& prof,
                                       std::span<const OrbitPoint> out_points) {
    if (!(f.grid == h.grid)) throw std::invalid_argument("invariant_product_at: grid mismatch");
    const GridSpec& g = f.grid;
    const double theta = prof.theta();
    const int r = a_oversampling(g, theta);
    const double hstep = g.da() / r;
    const int nrows = g.n_a * r;
    const double reach = 0.5 * std::asinh(theta * g.nyquist() / 2.0);
    const std::vector<double> lw = tukey_window(g.n_l);
    const std::vector<double> wa = tukey_window(nrows);
    const double lp0 = prof.log_p(0.0);
    const double scale = 4.0 / (M_PI * M_PI * theta * theta) * hstep * hstep;
    const FineRows ff = make_fine_rows(f, r);
    const FineRows fh = make_fine_rows(h, r);
    auto a_of = [&](int fine) { return -g.a_half + hstep * fine; };

    std::vector<cplx> out(out_points.size());
    parallel_for(out_points.size(), [&](size_t q) {
        const OrbitPoint p = out_points[q];
        const int ilo = std::max(0, static_cast<int>(std::ceil((p.a - reach + g.a_half) / hstep)));
        const int ihi = std::min(nrows - 1, static_cast<int>(std::floor((p.a + reach + g.a_half) / hstep)));
        const int nr = ihi - ilo + 1;
        if (nr <= 0) { out[q] = 0.0; return; }
        // spectra of the f rows at frequencies indexed by the a2 row, and of
        // the h rows at frequencies indexed by the a1 row
        std::vector<cplx> tf(static_cast<size_t>(nr) * nr), th(static_cast<size_t>(nr) * nr);
        std::vector<double> x1(static_cast<size_t>(nr)), x2(static_cast<size_t>(nr));
        for (int k = 0; k < nr; ++k) {
            x1[k] = -(2.0 / theta) * std::sinh(2.0 * (a_of(ilo + k) - p.a));  // from a2 rows
            x2[k] = -(2.0 / theta) * std::sinh(2.0 * (p.a - a_of(ilo + k)));  // from a1 rows
        }
        for (int i = 0; i < nr; ++i)
            for (int k = 0; k < nr; ++k) {
                tf[static_cast<size_t>(i) * nr + k] = fine_nudft(ff, g, ilo + i, x1[k], lw);
                th[static_cast<size_t>(i) * nr + k] = fine_nudft(fh, g, ilo + i, x2[k], lw);
            }
        cplx acc = 0.0;
        for (int i1 = 0; i1 < nr; ++i1) {
            const double a1 = a_of(ilo + i1);
            for (int i2 = 0; i2 < nr; ++i2) {
                const double a2 = a_of(ilo + i2);
                const double lpr = prof.log_p(4.0 * (a1 - p.a) / theta) +
                                   prof.log_p(4.0 * (p.a - a2) / theta) -
                                   prof.log_p(4.0 * (a1 - a2) / theta) - lp0;
                const double w = wa[ilo + i1] * wa[ilo + i2] * std::cosh(2.0 * (a1 - a2)) * std::exp(lpr);
                const cplx ph = std::polar(1.0, (2.0 / theta) * std::sinh(2.0 * (a1 - a2)) * p.l);
                acc += w * ph * tf[static_cast<size_t>(i1) * nr + i2] *
                       th[static_cast<size_t>(i2) * nr + i1];
            }
        }
        out[q] = scale * acc;
    });
    return out;
}

TraceDefect trace_defect(const SampledField& f, const SampledField& h,
                         const DeformationProfile& prof) {
    const GridSpec& g = f.grid;
    const SampledField prod = invariant_product(f, h, prof);
    const std::vector<double> wa = tukey_window(g.n_a);
    const std::vector<double> wl = tukey_window(g.n_l);
    cplx istar = 0.0, ipt = 0.0;
    for (int i = 0; i < g.n_a; ++i)
        for (int j = 0; j < g.n_l; ++j) {
            const double w = wa[i] * wl[j];
            istar += w * prod.at(i, j);
            ipt += w * f.at(i, j) * h.at(i, j);
        }
    istar *= g.da() * g.dl();
    ipt *= g.da() * g.dl();
    TraceDefect r;
    if (std::abs(ipt) < 1e-12) {
        r.absolute = true;
        r.defect = std::abs(istar - ipt);
    } else {
        r.defect = std::abs(istar - ipt) / std::abs(ipt);
    }
    return r;
}

double invariance_residual(const GroupElement& g, const AnalyticField& f, const AnalyticField& h,
                           const DeformationProfile& prof, const GridSpec& grid,
                           std::span<const OrbitPoint> points, bool moyal_control) {
    const SampledField sf = sample(f, grid);
    const SampledField sh = sample(h, grid);
    const SampledField sfp = sample(pullback(g, f), grid);
    const SampledField shp = sample(pullback(g, h), grid);
    const SampledField lhs = moyal_control ? moyal_product(sf, sh, prof.theta())
                                           : invariant_product(sf, sh, prof);
    const SampledField rhs = moyal_control ? moyal_product(sfp, shp, prof.theta())
                                           : invariant_product(sfp, shp, prof);
    double num = 0.0, den = 0.0;
    for (const OrbitPoint& p : points) {
        const cplx left = interp_at(lhs, coadjoint_act(g, p));
        const cplx right = interp_at(rhs, p);
        num += std::norm(left - right);
        den += std::norm(right);
    }
    return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

}  // namespace starq
