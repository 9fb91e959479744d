#include "starq/oscint.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace starq {

namespace {

// 8th-order stencils with zero-extension at the edges (the windows are
// chosen so the amplitude is negligible there; the doubling check guards it).
constexpr std::array<double, 9> kD1{1.0 / 280.0,  -4.0 / 105.0, 1.0 / 5.0, -4.0 / 5.0, 0.0,
                                    4.0 / 5.0,    -1.0 / 5.0,   4.0 / 105.0, -1.0 / 280.0};
constexpr std::array<double, 9> kD2{-1.0 / 560.0, 8.0 / 315.0, -1.0 / 5.0, 8.0 / 5.0,
                                    -205.0 / 72.0, 8.0 / 5.0,  -1.0 / 5.0, 8.0 / 315.0,
                                    -1.0 / 560.0};

std::vector<cplx> first_derivative(const std::vector<cplx>& v, double h) {
    const int n = static_cast<int>(v.size());
    std::vector<cplx> out(v.size());
    for (int i = 0; i < n; ++i) {
        cplx acc = 0.0;
        for (int s = -4; s <= 4; ++s) {
            const int j = i + s;
            if (j < 0 || j >= n || kD1[s + 4] == 0.0) continue;
            acc += kD1[s + 4] * v[j];
        }
        out[i] = acc / h;
    }
    return out;
}

std::vector<cplx> second_derivative(const std::vector<cplx>& v, double h) {
    const int n = static_cast<int>(v.size());
    std::vector<cplx> out(v.size());
    for (int i = 0; i < n; ++i) {
        cplx acc = 0.0;
        for (int s = -4; s <= 4; ++s) {
            const int j = i + s;
            if (j < 0 || j >= n) continue;
            acc += kD2[s + 4] * v[j];
        }
        out[i] = acc / (h * h);
    }
    return out;
}

struct Axis1D {
    std::vector<double> x;
    std::vector<double> w;  // taper * step
    double h;
};

Axis1D make_axis(const OscAxis& ax, double taper_frac) {
    Axis1D a;
    a.h = 2.0 * ax.half_width / ax.n;
    a.x.resize(static_cast<size_t>(ax.n));
    for (int i = 0; i < ax.n; ++i) a.x[i] = -ax.half_width + a.h * (i + 0.5);
    a.w = tukey_window(ax.n, taper_frac);
    for (auto& w : a.w) w *= a.h;
    return a;
}

std::vector<cplx> sample1(const std::function<cplx(double)>& f, const Axis1D& ax) {
    std::vector<cplx> v(ax.x.size());
    for (size_t i = 0; i < ax.x.size(); ++i) v[i] = f(ax.x[i]);
    return v;
}

// a-axis regularization factor (1 - d (kappa d (kappa . )))^reps with
// kappa = theta/(4 cosh(2u)). The inner first-order operator kappa*d sends
// the phase to +-i l e^{i phase}, so the squared form reproduces the
// (1 + l^2) weight exactly; the expansion has principal part
// (theta^2/(16 cosh^2)) d^2 plus bounded lower-order terms.
void apply_a_op(std::vector<cplx>& v, const Axis1D& ax, double theta, int reps) {
    std::vector<double> kappa(ax.x.size());
    for (size_t i = 0; i < ax.x.size(); ++i) kappa[i] = theta / (4.0 * std::cosh(2.0 * ax.x[i]));
    std::vector<cplx> tmp(v.size());
    for (int r = 0; r < reps; ++r) {
        for (size_t i = 0; i < v.size(); ++i) tmp[i] = kappa[i] * v[i];
        tmp = first_derivative(tmp, ax.h);
        for (size_t i = 0; i < v.size(); ++i) tmp[i] *= kappa[i];
        tmp = first_derivative(tmp, ax.h);
        for (size_t i = 0; i < v.size(); ++i) v[i] -= tmp[i];
    }
}

// l-axis factor (1 - (theta^2/4) d^2)^reps.
void apply_l_op(std::vector<cplx>& v, const Axis1D& ax, double theta, int reps) {
    const double c = theta * theta / 4.0;
    for (int r = 0; r < reps; ++r) {
        const auto d2 = second_derivative(v, ax.h);
        for (size_t i = 0; i < v.size(); ++i) v[i] -= c * d2[i];
    }
}

void apply_weight(std::vector<cplx>& v, const Axis1D& ax, const std::function<double(double)>& w,
                  int reps) {
    for (size_t i = 0; i < v.size(); ++i) v[i] *= std::pow(w(ax.x[i]), reps);
}

// Tapered sum_j w_j g_j e^{i s x_j}.
cplx spectral_sum(const std::vector<cplx>& g, const Axis1D& ax, double s) {
    cplx ph = std::polar(1.0, s * ax.x[0]);
    const cplx step = std::polar(1.0, s * ax.h);
    cplx acc = 0.0;
    for (size_t j = 0; j < g.size(); ++j) {
        acc += ax.w[j] * g[j] * ph;
        ph *= step;
    }
    return acc;
}

cplx evaluate_factored(const FactoredAmplitude& amp, double theta, const OscOrders& o,
                       const OscGrids& grids) {
    const Axis1D a1 = make_axis(grids.a1, grids.taper_frac);
    const Axis1D a2 = make_axis(grids.a2, grids.taper_frac);
    const Axis1D l1 = make_axis(grids.l1, grids.taper_frac);
    const Axis1D l2 = make_axis(grids.l2, grids.taper_frac);

    auto g1 = sample1(amp.g1, l1);
    auto g2 = sample1(amp.g2, l2);

    auto w_rat = [](double l) { return 1.0 / (1.0 + l * l); };
    auto w_sinh = [](double u) {
        const double s = std::sinh(2.0 * u);
        return 1.0 / (1.0 + s * s);
    };

    // core as a 2-D array over (u1, u2)
    const int n1 = static_cast<int>(a1.x.size()), n2 = static_cast<int>(a2.x.size());
    std::vector<cplx> core(static_cast<size_t>(n1) * n2);
    if (amp.core) {
        for (int i = 0; i < n1; ++i)
            for (int j = 0; j < n2; ++j) core[static_cast<size_t>(i) * n2 + j] = amp.core(a1.x[i], a2.x[j]);
    } else {
        const auto f1 = sample1(amp.f1, a1);
        const auto f2 = sample1(amp.f2, a2);
        for (int i = 0; i < n1; ++i)
            for (int j = 0; j < n2; ++j) core[static_cast<size_t>(i) * n2 + j] = f1[i] * f2[j];
    }
    auto core_op = [&](bool along_u1, int reps) {
        const Axis1D& ax = along_u1 ? a1 : a2;
        std::vector<cplx> line(along_u1 ? static_cast<size_t>(n1) : static_cast<size_t>(n2));
        const int outer = along_u1 ? n2 : n1;
        for (int k = 0; k < outer; ++k) {
            for (size_t t = 0; t < line.size(); ++t)
                line[t] = along_u1 ? core[t * n2 + k] : core[static_cast<size_t>(k) * n2 + t];
            apply_a_op(line, ax, theta, reps);
            for (size_t t = 0; t < line.size(); ++t)
                (along_u1 ? core[t * n2 + k] : core[static_cast<size_t>(k) * n2 + t]) = line[t];
        }
    };
    auto core_weight = [&](bool along_u1, const std::function<double(double)>& w, int reps) {
        for (int i = 0; i < n1; ++i)
            for (int j = 0; j < n2; ++j)
                core[static_cast<size_t>(i) * n2 + j] *= std::pow(w(along_u1 ? a1.x[i] : a2.x[j]), reps);
    };

    // operator factors, rightmost first
    apply_weight(g2, l2, w_rat, o.p2);
    core_op(true, o.p2);
    apply_weight(g1, l1, w_rat, o.p1);
    core_op(false, o.p1);
    apply_l_op(g1, l1, theta, o.k2);
    core_weight(false, w_sinh, o.k2);
    apply_l_op(g2, l2, theta, o.k1);
    core_weight(true, w_sinh, o.k1);

    // phase (2/theta)(sinh(2 u2) l1 - sinh(2 u1) l2): spectral sums per node
    std::vector<cplx> G1(static_cast<size_t>(n2)), G2(static_cast<size_t>(n1));
    for (int j = 0; j < n2; ++j) G1[j] = spectral_sum(g1, l1, (2.0 / theta) * std::sinh(2.0 * a2.x[j]));
    for (int i = 0; i < n1; ++i) G2[i] = spectral_sum(g2, l2, -(2.0 / theta) * std::sinh(2.0 * a1.x[i]));

    cplx acc = 0.0;
    for (int i = 0; i < n1; ++i) {
        cplx row = 0.0;
        for (int j = 0; j < n2; ++j) row += a2.w[j] * core[static_cast<size_t>(i) * n2 + j] * G1[j];
        acc += a1.w[i] * G2[i] * row;
    }
    return acc;
}

OscGrids doubled(const OscGrids& g) {
    auto d = [](const OscAxis& a) { return OscAxis{2.0 * a.half_width, 2 * a.n}; };
    return {d(g.a1), d(g.a2), d(g.l1), d(g.l2), g.taper_frac};
}

}  // namespace

OscResult osc_integral(const FactoredAmplitude& amp, double theta, const OscOrders& orders,
                       const OscGrids& grids, double tol) {
    if (theta <= 0.0) throw std::invalid_argument("osc_integral: theta must be positive");
    if (!amp.g1 || !amp.g2 || (!amp.core && (!amp.f1 || !amp.f2)))
        throw std::invalid_argument("osc_integral: incomplete amplitude");
    const cplx v1 = evaluate_factored(amp, theta, orders, grids);
    const cplx v2 = evaluate_factored(amp, theta, orders, doubled(grids));
    OscResult r;
    r.value = v2;
    r.window_drift = std::abs(v2 - v1) / std::max(std::abs(v2), 1e-300);
    r.converged = r.window_drift <= tol;
    r.orders_used = orders;
    return r;
}

OscResult osc_integral(const std::function<cplx(double, double, double, double)>& amp,
                       double theta, const OscOrders& orders, const OscGrids& grids, double tol) {
    if (theta <= 0.0) throw std::invalid_argument("osc_integral: theta must be positive");
    auto evaluate = [&](const OscGrids& g) {
        const Axis1D a1 = make_axis(g.a1, g.taper_frac);
        const Axis1D a2 = make_axis(g.a2, g.taper_frac);
        const Axis1D l1 = make_axis(g.l1, g.taper_frac);
        const Axis1D l2 = make_axis(g.l2, g.taper_frac);
        const size_t n1 = a1.x.size(), n2 = a2.x.size(), m1 = l1.x.size(), m2 = l2.x.size();
        const size_t total = n1 * n2 * m1 * m2;
        if (total > (size_t(1) << 28))
            throw std::invalid_argument("osc_integral: grid too large for the general amplitude path");
        std::vector<cplx> F(total);
        auto idx = [&](size_t i, size_t j, size_t u, size_t v) {
            return ((i * n2 + j) * m1 + u) * m2 + v;
        };
        for (size_t i = 0; i < n1; ++i)
            for (size_t j = 0; j < n2; ++j)
                for (size_t u = 0; u < m1; ++u)
                    for (size_t v = 0; v < m2; ++v)
                        F[idx(i, j, u, v)] = amp(a1.x[i], a2.x[j], l1.x[u], l2.x[v]);

        // axis-wise operator application on the 4-D array, rightmost factor first
        auto apply_axis = [&](int axis, bool a_type, int reps) {
            std::vector<cplx> line;
            const Axis1D& ax = axis == 0 ? a1 : axis == 1 ? a2 : axis == 2 ? l1 : l2;
            const size_t len = ax.x.size();
            line.resize(len);
            const size_t sizes[4] = {n1, n2, m1, m2};
            size_t outer[3], oi = 0;
            for (size_t d = 0; d < 4; ++d)
                if (d != static_cast<size_t>(axis)) outer[oi++] = sizes[d];
            for (size_t o0 = 0; o0 < outer[0]; ++o0)
                for (size_t o1 = 0; o1 < outer[1]; ++o1)
                    for (size_t o2 = 0; o2 < outer[2]; ++o2) {
                        size_t c4[4];
                        size_t pos = 0;
                        const size_t ovals[3] = {o0, o1, o2};
                        for (size_t d = 0; d < 4; ++d)
                            c4[d] = (d == static_cast<size_t>(axis)) ? 0 : ovals[pos++];
                        for (size_t t = 0; t < len; ++t) {
                            c4[axis] = t;
                            line[t] = F[idx(c4[0], c4[1], c4[2], c4[3])];
                        }
                        if (a_type)
                            apply_a_op(line, ax, theta, reps);
                        else
                            apply_l_op(line, ax, theta, reps);
                        for (size_t t = 0; t < len; ++t) {
                            c4[axis] = t;
                            F[idx(c4[0], c4[1], c4[2], c4[3])] = line[t];
                        }
                    }
        };
        auto weight_axis = [&](int axis, const std::function<double(double)>& w, int reps) {
            const Axis1D& ax = axis == 0 ? a1 : axis == 1 ? a2 : axis == 2 ? l1 : l2;
            for (size_t i = 0; i < n1; ++i)
                for (size_t j = 0; j < n2; ++j)
                    for (size_t u = 0; u < m1; ++u)
                        for (size_t v = 0; v < m2; ++v) {
                            const double x = axis == 0 ? ax.x[i] : axis == 1 ? ax.x[j] : axis == 2 ? ax.x[u] : ax.x[v];
                            F[idx(i, j, u, v)] *= std::pow(w(x), reps);
                        }
        };
        auto w_rat = [](double l) { return 1.0 / (1.0 + l * l); };
        auto w_sinh = [](double u) {
            const double s = std::sinh(2.0 * u);
            return 1.0 / (1.0 + s * s);
        };
        if (orders.p2) { weight_axis(3, w_rat, orders.p2); apply_axis(0, true, orders.p2); }
        if (orders.p1) { weight_axis(2, w_rat, orders.p1); apply_axis(1, true, orders.p1); }
        if (orders.k2) { apply_axis(2, false, orders.k2); weight_axis(1, w_sinh, orders.k2); }
        if (orders.k1) { apply_axis(3, false, orders.k1); weight_axis(0, w_sinh, orders.k1); }

        cplx acc = 0.0;
        std::vector<cplx> ph1(m1), ph2(m2);
        for (size_t i = 0; i < n1; ++i) {
            const double s2 = -(2.0 / theta) * std::sinh(2.0 * a1.x[i]);
            for (size_t v = 0; v < m2; ++v) ph2[v] = l2.w[v] * std::polar(1.0, s2 * l2.x[v]);
            for (size_t j = 0; j < n2; ++j) {
                const double s1 = (2.0 / theta) * std::sinh(2.0 * a2.x[j]);
                for (size_t u = 0; u < m1; ++u) ph1[u] = l1.w[u] * std::polar(1.0, s1 * l1.x[u]);
                cplx cell = 0.0;
                for (size_t u = 0; u < m1; ++u) {
                    cplx inner = 0.0;
                    const cplx* base = &F[idx(i, j, u, 0)];
                    for (size_t v = 0; v < m2; ++v) inner += base[v] * ph2[v];
                    cell += ph1[u] * inner;
                }
                acc += a1.w[i] * a2.w[j] * cell;
            }
        }
        return acc;
    };
    const cplx v1 = evaluate(grids);
    const cplx v2 = evaluate(doubled(grids));
    OscResult r;
    r.value = v2;
    r.window_drift = std::abs(v2 - v1) / std::max(std::abs(v2), 1e-300);
    r.converged = r.window_drift <= tol;
    r.orders_used = orders;
    return r;
}

OscResult osc_integral_adaptive(const FactoredAmplitude& amp, double theta, const OscGrids& grids,
                                double tol, const OscOrders& start) {
    OscOrders o = start;
    OscResult r;
    for (;;) {
        r = osc_integral(amp, theta, o, grids, tol);
        if (r.converged || (o.k1 >= 4 && o.k2 >= 4 && o.p1 >= 4 && o.p2 >= 4)) return r;
        o = {std::min(o.k1 + 1, 4), std::min(o.k2 + 1, 4), std::min(o.p1 + 1, 4), std::min(o.p2 + 1, 4)};
    }
}

}  // namespace starq
