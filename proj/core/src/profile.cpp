#include "starq/profile.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace starq {

DeformationProfile::DeformationProfile(Kind k, double theta, std::function<double(double)> lp,
                                       double pp0, bool has_pp0)
    : kind_(k), theta_(theta), log_p_(std::move(lp)), p_prime0_(pp0), has_p_prime0_(has_pp0) {
    if (!(theta > 0.0)) throw std::invalid_argument("DeformationProfile: theta must be positive");
}

DeformationProfile DeformationProfile::tracial(double theta) {
    return DeformationProfile(Kind::Tracial, theta,
                              [theta](double s) { return 0.5 * log_cosh(s * theta / 2.0); }, 0.0,
                              true);
}

DeformationProfile DeformationProfile::unit(double theta) {
    return DeformationProfile(Kind::Unit, theta, [](double) { return 0.0; }, 0.0, true);
}

DeformationProfile DeformationProfile::custom(double theta, std::function<double(double)> log_p,
                                              double p_prime0_hint, bool has_p_prime) {
    return DeformationProfile(Kind::Custom, theta, std::move(log_p), p_prime0_hint, has_p_prime);
}

double DeformationProfile::p(double s) const { return std::exp(log_p_(s)); }

double DeformationProfile::p_prime0() const {
    if (has_p_prime0_) return p_prime0_;
    const double h = 1e-6;
    return (p(h) - p(-h)) / (2.0 * h);
}

std::string DeformationProfile::name() const {
    switch (kind_) {
        case Kind::Tracial: return "tracial";
        case Kind::Unit: return "unit";
        default: return "custom";
    }
}

}  // namespace starq
