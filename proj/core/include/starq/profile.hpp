#pragma once

#include <functional>
#include <string>

#include "starq/numeric.hpp"

namespace starq {

// Deformation data: parameter theta > 0 and the positive multiplier
// function P(s) on the frequency axis, kept in log form so ratios of
// sqrt-cosh factors never overflow.
class DeformationProfile {
  public:
    enum class Kind { Tracial, Unit, Custom };

    static DeformationProfile tracial(double theta);  // P(s) = sqrt(cosh(s*theta/2))
    static DeformationProfile unit(double theta);     // P == 1
    static DeformationProfile custom(double theta, std::function<double(double)> log_p,
                                     double p_prime0_hint = 0.0, bool has_p_prime = false);

    double theta() const { return theta_; }
    Kind kind() const { return kind_; }
    bool is_tracial() const { return kind_ == Kind::Tracial; }
    std::string name() const;

    double log_p(double s) const { return log_p_(s); }
    double p(double s) const;
    // dP/ds at 0; central difference with step 1e-6 when no analytic value.
    double p_prime0() const;

  private:
    DeformationProfile(Kind k, double theta, std::function<double(double)> lp, double pp0, bool has_pp0);

    Kind kind_;
    double theta_;
    std::function<double(double)> log_p_;
    double p_prime0_;
    bool has_p_prime0_;
};

}  // namespace starq
