#include "starq/grid.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "starq/fft.hpp"
#include "starq/parallel.hpp"

namespace starq {

GridSpec::GridSpec(double ah, double lh, int na, int nl)
    : a_half(ah), l_half(lh), n_a(na), n_l(nl) {
    if (!(ah > 0.0) || !(lh > 0.0)) throw std::invalid_argument("GridSpec: windows must be positive");
    if (!is_pow2(na) || !is_pow2(nl)) throw std::invalid_argument("GridSpec: node counts must be powers of two");
}

double SampledField::l2_norm() const {
    double s = 0.0;
    for (const auto& v : values) s += std::norm(v);
    return std::sqrt(s);
}

double rel_l2_diff(const SampledField& f, const SampledField& h) {
    if (!(f.grid == h.grid)) throw std::invalid_argument("rel_l2_diff: grid mismatch");
    double num = 0.0, den = 0.0;
    for (size_t i = 0; i < f.values.size(); ++i) {
        num += std::norm(f.values[i] - h.values[i]);
        den += std::norm(h.values[i]);
    }
    return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

SampledField sample(const AnalyticField& f, const GridSpec& grid) {
    SampledField out(grid, Domain::Position);
    for (int i = 0; i < grid.n_a; ++i) {
        for (int j = 0; j < grid.n_l; ++j) {
            const cplx v = f({grid.a(i), grid.l(j)});
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
                std::ostringstream msg;
                msg << "sample: non-finite value at node (a=" << grid.a(i) << ", l=" << grid.l(j) << ")";
                throw std::runtime_error(msg.str());
            }
            out.at(i, j) = v;
        }
    }
    return out;
}

SampledField partial_fourier(const SampledField& f) {
    if (f.domain != Domain::Position)
        throw std::invalid_argument("partial_fourier: field must be position-domain");
    const GridSpec& g = f.grid;
    SampledField out(g, Domain::Frequency);
    // fhat(xi_k) = dl e^{i xi_k L} DFT[(-1)^j f_j]_k
    std::vector<cplx> phase(static_cast<size_t>(g.n_l));
    for (int k = 0; k < g.n_l; ++k)
        phase[k] = g.dl() * std::polar(1.0, g.xi(k) * g.l_half);
    parallel_for(static_cast<size_t>(g.n_a), [&](size_t i) {
        std::vector<cplx> buf(f.row(static_cast<int>(i)).begin(), f.row(static_cast<int>(i)).end());
        for (int j = 1; j < g.n_l; j += 2) buf[j] = -buf[j];
        fft_inplace(buf);
        auto dst = out.row(static_cast<int>(i));
        for (int k = 0; k < g.n_l; ++k) dst[k] = phase[k] * buf[k];
    });
    return out;
}

SampledField inverse_partial_fourier(const SampledField& f) {
    if (f.domain != Domain::Frequency)
        throw std::invalid_argument("inverse_partial_fourier: field must be frequency-domain");
    const GridSpec& g = f.grid;
    SampledField out(g, Domain::Position);
    std::vector<cplx> phase(static_cast<size_t>(g.n_l));
    for (int k = 0; k < g.n_l; ++k)
        phase[k] = std::polar(1.0, -g.xi(k) * g.l_half) / g.dl();
    parallel_for(static_cast<size_t>(g.n_a), [&](size_t i) {
        std::vector<cplx> buf(static_cast<size_t>(g.n_l));
        auto src = f.row(static_cast<int>(i));
        for (int k = 0; k < g.n_l; ++k) buf[k] = phase[k] * src[k];
        ifft_inplace(buf);
        auto dst = out.row(static_cast<int>(i));
        for (int j = 0; j < g.n_l; ++j) dst[j] = (j & 1) ? -buf[j] : buf[j];
    });
    return out;
}

cplx nudft_row(const SampledField& f, int row, double xi, std::span<const double> lw) {
    const GridSpec& g = f.grid;
    auto r = f.row(row);
    // e^{-i xi l_j} by phase recurrence
    cplx ph = std::polar(1.0, -xi * g.l(0));
    const cplx step = std::polar(1.0, -xi * g.dl());
    cplx acc = 0.0;
    if (lw.empty()) {
        for (int j = 0; j < g.n_l; ++j) {
            acc += r[j] * ph;
            ph *= step;
        }
    } else {
        for (int j = 0; j < g.n_l; ++j) {
            acc += lw[j] * r[j] * ph;
            ph *= step;
        }
    }
    return acc * g.dl();
}

namespace {

// 4th-order central first derivative along one axis, iterated for higher
// orders; callers must exclude the shrinking invalid margin from sups.
constexpr std::array<double, 5> kD1{1.0 / 12.0, -8.0 / 12.0, 0.0, 8.0 / 12.0, -1.0 / 12.0};

void diff_axis(std::vector<cplx>& v, int n_a, int n_l, bool along_a, double h) {
    std::vector<cplx> src = v;
    auto idx = [n_l](int i, int j) { return static_cast<size_t>(i) * n_l + j; };
    for (int i = 0; i < n_a; ++i) {
        for (int j = 0; j < n_l; ++j) {
            cplx acc = 0.0;
            for (int s = -2; s <= 2; ++s) {
                const double c = kD1[s + 2];
                if (c == 0.0) continue;
                const int ii = along_a ? i + s : i;
                const int jj = along_a ? j : j + s;
                if (ii < 0 || ii >= n_a || jj < 0 || jj >= n_l) continue;
                acc += c * src[idx(ii, jj)];
            }
            v[idx(i, j)] = acc / h;
        }
    }
}

}  // namespace

double schwartz_seminorm(const SampledField& f, const SeminormIndex& idx) {
    if (f.domain != Domain::Position)
        throw std::invalid_argument("schwartz_seminorm: field must be position-domain");
    if (idx.k < 0 || idx.p < 0 || idx.q < 0 || idx.n < 0)
        throw std::invalid_argument("schwartz_seminorm: negative index");
    const GridSpec& g = f.grid;
    const int margin_a = 2 * idx.p;
    const int margin_l = 2 * idx.n;
    if (2 * margin_a + 4 >= g.n_a || 2 * margin_l + 4 >= g.n_l)
        throw std::invalid_argument("schwartz_seminorm: grid too small for derivative order");

    std::vector<cplx> work = f.values;
    for (int r = 0; r < idx.p; ++r) diff_axis(work, g.n_a, g.n_l, true, g.da());
    for (int r = 0; r < idx.n; ++r) diff_axis(work, g.n_a, g.n_l, false, g.dl());

    double sup = 0.0;
    for (int i = std::max(margin_a, 1); i < g.n_a - std::max(margin_a, 1); ++i) {
        const double sh = std::sinh(2.0 * g.a(i));
        const double ch = std::cosh(2.0 * g.a(i));
        const double wa = std::pow(sh, idx.k) / std::pow(ch, idx.p);
        for (int j = std::max(margin_l, 1); j < g.n_l - std::max(margin_l, 1); ++j) {
            const double w = wa * std::pow(g.l(j), idx.q);
            const double v = std::abs(w) * std::abs(work[static_cast<size_t>(i) * g.n_l + j]);
            if (v > sup) sup = v;
        }
    }
    return sup;
}

namespace {

// Barycentric-free Lagrange weights for 8 uniform nodes at offset t in [0,1)
// relative to node 3.
std::array<double, 8> lagrange8_weights(double t) {
    std::array<double, 8> w;
    const double x = 3.0 + t;
    for (int i = 0; i < 8; ++i) {
        double p = 1.0;
        for (int j = 0; j < 8; ++j) {
            if (j == i) continue;
            p *= (x - j) / (i - j);
        }
        w[i] = p;
    }
    return w;
}

}  // namespace

SampledField shift_rows(const SampledField& f, double shift) {
    const GridSpec& g = f.grid;
    SampledField out(g, f.domain);
    const double pos = shift / g.da();
    const double fl = std::floor(pos);
    const int base = static_cast<int>(fl) - 3;
    const auto w = lagrange8_weights(pos - fl);
    parallel_for(static_cast<size_t>(g.n_a), [&](size_t i) {
        auto dst = out.row(static_cast<int>(i));
        for (int r = 0; r < 8; ++r) {
            const int src = static_cast<int>(i) + base + r;
            if (src < 0 || src >= g.n_a || w[r] == 0.0) continue;
            auto s = f.row(src);
            for (int j = 0; j < g.n_l; ++j) dst[j] += w[r] * s[j];
        }
    });
    return out;
}

cplx interp_at(const SampledField& f, OrbitPoint p) {
    const GridSpec& g = f.grid;
    const double pa = (p.a + g.a_half) / g.da();
    const double pl = (p.l + g.l_half) / g.dl();
    const int ia = static_cast<int>(std::floor(pa)) - 3;
    const int jl = static_cast<int>(std::floor(pl)) - 3;
    const auto wa = lagrange8_weights(pa - std::floor(pa));
    const auto wl = lagrange8_weights(pl - std::floor(pl));
    cplx acc = 0.0;
    for (int r = 0; r < 8; ++r) {
        const int i = ia + r;
        if (i < 0 || i >= g.n_a) continue;
        cplx rowacc = 0.0;
        for (int s = 0; s < 8; ++s) {
            const int j = jl + s;
            if (j < 0 || j >= g.n_l) continue;
            rowacc += wl[s] * f.at(i, j);
        }
        acc += wa[r] * rowacc;
    }
    return acc;
}

void write_field_csv(std::ostream& os, const SampledField& f) {
    char buf[128];
    os << "# starq-field v1\n";
    std::snprintf(buf, sizeof buf, "# %.17g,%.17g,%d,%d,%s\n", f.grid.a_half, f.grid.l_half,
                  f.grid.n_a, f.grid.n_l, f.domain == Domain::Position ? "position" : "frequency");
    os << buf;
    os << "a,l,re,im\n";
    for (int i = 0; i < f.grid.n_a; ++i) {
        for (int j = 0; j < f.grid.n_l; ++j) {
            const cplx v = f.at(i, j);
            std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", f.grid.a(i), f.grid.l(j),
                          v.real(), v.imag());
            os << buf;
        }
    }
}

SampledField read_field_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line != "# starq-field v1")
        throw std::runtime_error("read_field_csv: bad magic line");
    if (!std::getline(is, line) || line.size() < 3)
        throw std::runtime_error("read_field_csv: missing metadata");
    double ah, lh;
    int na, nl;
    char dom[16] = {0};
    if (std::sscanf(line.c_str(), "# %lg,%lg,%d,%d,%15s", &ah, &lh, &na, &nl, dom) != 5)
        throw std::runtime_error("read_field_csv: malformed metadata");
    if (!std::getline(is, line))  // column header
        throw std::runtime_error("read_field_csv: missing header");
    SampledField f(GridSpec(ah, lh, na, nl),
                   std::string(dom) == "position" ? Domain::Position : Domain::Frequency);
    for (int i = 0; i < na; ++i) {
        for (int j = 0; j < nl; ++j) {
            if (!std::getline(is, line)) throw std::runtime_error("read_field_csv: truncated data");
            double a, l, re, im;
            if (std::sscanf(line.c_str(), "%lg,%lg,%lg,%lg", &a, &l, &re, &im) != 4)
                throw std::runtime_error("read_field_csv: malformed row");
            f.at(i, j) = {re, im};
        }
    }
    return f;
}

void write_field_csv_file(const std::string& path, const SampledField& f) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("write_field_csv_file: cannot open " + path);
    write_field_csv(os, f);
}

SampledField read_field_csv_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("read_field_csv_file: cannot open " + path);
    return read_field_csv(is);
}

}  // namespace starq
