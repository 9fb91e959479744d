#pragma once

#include <span>
#include <vector>

#include "starq/grid.hpp"
#include "starq/moyal.hpp"
#include "starq/profile.hpp"

namespace starq {

// Frequency warp phi(a,l) = (a, (2/theta) sinh(theta l / 2)) and inverse.
OrbitPoint warp_forward(double theta, OrbitPoint p);
OrbitPoint warp_inverse(double theta, OrbitPoint p);

// T = P(0) F^{-1} o (phi^{-1})^* o P^{-1} o F, realized as non-uniform
// evaluation of the row spectrum at arcsinh-warped frequencies followed by
// a uniform inverse transform. Normalized so T(1) = 1.
SampledField apply_T(const DeformationProfile& prof, const SampledField& f);

// Inverse pipeline: spectrum sampled at sinh-warped frequencies (clamped to
// the representable band), multiplied by P, inverse transform.
SampledField apply_T_inv(const DeformationProfile& prof, const SampledField& f);

// The invariant product evaluated on the full grid. The l-integrals are
// row spectra at the warped frequencies -(2/theta) sinh(2 d a_step); the
// remaining (a1, a2) double integral is windowed quadrature with the
// cosh/P-ratio amplitude, accumulated per row-offset difference so each
// output row costs O(band^2 + band * n_l).
SampledField invariant_product(const SampledField& f, const SampledField& h,
                               const DeformationProfile& prof);

// Same quadrature evaluated at arbitrary output points.
std::vector<cplx> invariant_product_at(const SampledField& f, const SampledField& h,
                                       const DeformationProfile& prof,
                                       std::span<const OrbitPoint> out_points);

struct TraceDefect {
    double defect = 0.0;   // relative unless the denominator vanished
    bool absolute = false; // set when |int f h| was too small to divide by
};

// | int (f * h) - int f h | / | int f h | with tapered grid quadrature.
TraceDefect trace_defect(const SampledField& f, const SampledField& h,
                         const DeformationProfile& prof);

// Relative L2 mismatch between (f * h)(g . p) and ((g^*f) * (g^*h))(p)
// over the sample points; `moyal_control` swaps in the covariant-only
// product to witness that invariance is specific to the warped one.
double invariance_residual(const GroupElement& g, const AnalyticField& f, const AnalyticField& h,
                           const DeformationProfile& prof, const GridSpec& grid,
                           std::span<const OrbitPoint> points, bool moyal_control = false);

}  // namespace starq
