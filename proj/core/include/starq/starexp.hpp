#pragma once

#include <span>
#include <vector>

#include "starq/intertwiner.hpp"
#include "starq/lie.hpp"
#include "starq/profile.hpp"

namespace starq {

// Closed-form star-exponential for a profile P:
//   amp(t) e^{(i/th) sinh(al t)(2l + (be/al) e^{-2a} - (ga/al) e^{2a})},
//   amp(t) = P(0) cosh(al t) / P(2 al t / th) * e^{2 P'(0) al t / (th P(0))},
// which reduces to sqrt(cosh(al t)) for the tracial profile. The modulus is
// constant on the orbit; the l-frequency kappa = (2/th) sinh(al t).
class StarExponential {
  public:
    StarExponential(const AlgebraElement& x, double t, const DeformationProfile& prof);

    cplx operator()(OrbitPoint p) const;
    AnalyticField as_field() const;

    const AlgebraElement& generator() const { return x_; }
    double time() const { return t_; }
    const DeformationProfile& profile() const { return prof_; }
    double amplitude() const { return amp_; }
    double kappa() const { return kappa_; }

    // a-dependent part of the phase
    double a_phase(double a) const;

  private:
    AlgebraElement x_;
    double t_;
    DeformationProfile prof_;
    double amp_;    // constant modulus
    double kappa_;  // l-frequency
    double ce_, cf_;
};

StarExponential star_exp(const AlgebraElement& x, double t, const DeformationProfile& prof);

// Left multiplier action Ex * f. The oscillatory l1-integral against the
// constant-frequency phase collapses onto the shifted row a - al t/2; what
// remains is an absolutely convergent 1-D quadrature over the warped band
// with the row spectrum of f evaluated at -(2/th) sinh(2v).
SampledField multiplier_apply(const StarExponential& ex, const SampledField& f, int n_quad = 1024);

// Relative L2 norm of E(BCH(x,y))*f - E(x)*(E(y)*f).
double bch_residual(const AlgebraElement& x, const AlgebraElement& y,
                    const DeformationProfile& prof, const SampledField& f);

struct OdeResidualOptions {
    GridSpec grid{1.5, 120.0, 256, 256};
    double l_gauss_width = 50.0;   // analytic l-window
    double a_flat = 1.0;           // plateau half-width of the a-window
    double a_end = 1.45;           // taper end
    double interior_a = 0.85;      // residual norm region
    double interior_l = 5.0;
};

// || (E(t+dt) - E(t-dt))/(2 dt) - (i/th) lambda_X * E(t) ||_2 over the
// interior window, for the windowed samples of the quadratic-phase
// exponential. Second order in dt.
double ode_residual(const AlgebraElement& x, double t, double theta, double dt,
                    const OdeResidualOptions& opt = {});

// max over the family of schwartz_seminorm(Ex * f, idx).
double multiplier_seminorm_scan(const StarExponential& ex, std::span<const SampledField> family,
                                const SeminormIndex& idx);

// T applied to the windowed quadratic-phase exponential, including the
// scalar shift 2 al P'(0) t / (th P(0)); matches the closed form on the
// window interior and validates the conjugation derivation.
SampledField star_exp_via_pipeline(const AlgebraElement& x, double t,
                                   const DeformationProfile& prof, const GridSpec& grid,
                                   const AnalyticField& window);

}  // namespace starq
