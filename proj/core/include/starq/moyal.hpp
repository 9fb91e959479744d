#pragma once

#include "starq/grid.hpp"
#include "starq/lie.hpp"
#include "starq/orbit.hpp"

namespace starq {

// Translation-covariant quadratic-phase product on the chart, evaluated
// spectrally: spec(f*h)(a,xi) = (1/2pi) int dxi1
//   fhat(a + th(xi-xi1)/4, xi1) hhat(a - th xi1/4, xi - xi1).
SampledField moyal_product(const SampledField& f, const SampledField& h, double theta);

// Left multiplication by a moment function as a frequency multiplier:
//   lambda_H: 2 l f + (i th/2) d_a f            (position-local)
//   lambda_E: e^{-2a - th xi/2} on the spectrum
//   lambda_F: -e^{2a + th xi/2} on the spectrum
// d_a uses 8th-order central differences.
SampledField moment_left_mul(const AlgebraElement& x, const SampledField& f, double theta);

// || lam_X*(lam_Y*f) - lam_Y*(lam_X*f) + i th lam_[X,Y]*f ||_2 / ||f||_2.
double covariance_residual(const AlgebraElement& x, const AlgebraElement& y,
                           const SampledField& f, double theta);

// Closed-form solution of d_t u = (i/th) lambda_X * u, u(0) = 1:
//   exp((i/th)(2 l alpha t + (sinh(alpha t)/alpha)(beta e^{-2a} - gamma e^{2a}))).
AnalyticField moyal_star_exp(const AlgebraElement& x, double t, double theta);

// Left product of the exponential phase with a sampled field, evaluated
// through its distributional spectrum (exact row shift plus multiplier):
//   out(a,l) = e^{i c1 l} (1/2pi) int dxi e^{i xi l} e^{i g(a + th xi/4)} fhat(a - th c1/4, xi).
SampledField moyal_exp_apply(const AlgebraElement& x, double t, double theta,
                             const SampledField& f);

// Band-limit guard used by the multiplier operators.
void check_band_limit(const GridSpec& grid, double theta);

}  // namespace starq
