#pragma once

#include <functional>

#include "starq/numeric.hpp"

namespace starq {

// Regularization orders (k1, k2, p1, p2) of the integration-by-parts
// identity; (0,0,0,0) is the direct unregularized quadrature.
struct OscOrders {
    int k1 = 2, k2 = 2, p1 = 2, p2 = 2;
};

struct OscAxis {
    double half_width;
    int n;
};

struct OscGrids {
    OscAxis a1, a2, l1, l2;
    double taper_frac = 0.15;
};

// Amplitude F(u1, u2, l1, l2) = core(u1, u2) * g1(l1) * g2(l2).
// When `core` is empty the separable pair f1(u1)*f2(u2) is used instead.
// The factored form keeps the regularization operators one-dimensional.
struct FactoredAmplitude {
    std::function<cplx(double, double)> core;
    std::function<cplx(double)> f1, f2;
    std::function<cplx(double)> g1, g2;
};

struct OscResult {
    cplx value{};
    bool converged = false;
    double window_drift = 0.0;  // relative change under window doubling
    OscOrders orders_used{};
};

// Oscillatory integral with phase (2/theta)(sinh(2 u2) l1 - sinh(2 u1) l2),
// evaluated through the regularized form: the four operator factors
//   (1 - (th^2/4) d^2_{l2}) / (1 + sinh^2(2 u1))   applied k1 times,
//   (1 - (th^2/4) d^2_{l1}) / (1 + sinh^2(2 u2))   applied k2 times,
//   (1 - (th^2/(16 cosh^2(2 u2))) d^2_{u2}) / (1 + l1^2)  applied p1 times,
//   (1 - (th^2/(16 cosh^2(2 u1))) d^2_{u1}) / (1 + l2^2)  applied p2 times
// act on the sampled amplitude right-to-left before windowed quadrature.
OscResult osc_integral(const FactoredAmplitude& amp, double theta, const OscOrders& orders,
                       const OscGrids& grids, double tol = 1e-8);

// General 4-argument amplitude; materializes the 4-D sample array, so this
// path is for validation-scale grids.
OscResult osc_integral(const std::function<cplx(double, double, double, double)>& amp,
                       double theta, const OscOrders& orders, const OscGrids& grids,
                       double tol = 1e-8);

// Escalates orders from `start` up to (4,4,4,4) until the window-doubling
// drift passes `tol`.
OscResult osc_integral_adaptive(const FactoredAmplitude& amp, double theta, const OscGrids& grids,
                                double tol = 1e-8, const OscOrders& start = {2, 2, 2, 2});

}  // namespace starq
