#include "starq/lie.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace starq {

namespace {

void check_finite(const GroupElement& g, const char* where) {
    if (!std::isfinite(g.a) || !std::isfinite(g.l) || !std::isfinite(g.m))
        throw std::range_error(std::string(where) + ": non-finite result");
}

}  // namespace

double AlgebraElement::norm() const {
    return std::sqrt(alpha * alpha + beta * beta + gamma * gamma);
}

GroupElement group_mul(const GroupElement& g1, const GroupElement& g2) {
    GroupElement r{g1.a + g2.a,
                   std::exp(-2.0 * g2.a) * g1.l + g2.l,
                   std::exp(2.0 * g2.a) * g1.m + g2.m};
    check_finite(r, "group_mul");
    return r;
}

GroupElement group_inv(const GroupElement& g) {
    GroupElement r{-g.a, -std::exp(2.0 * g.a) * g.l, -std::exp(-2.0 * g.a) * g.m};
    check_finite(r, "group_inv");
    return r;
}

GroupElement group_exp(const AlgebraElement& x, double t) {
    const double at = x.alpha * t;
    const double s = sinhc(at);  // sinh(alpha t)/(alpha t), removable at 0
    GroupElement r{at,
                   x.beta * t * std::exp(-at) * s,
                   x.gamma * t * std::exp(at) * s};
    check_finite(r, "group_exp");
    return r;
}

AlgebraElement group_log(const GroupElement& g) {
    const double inv_s = inv_sinhc(g.a);  // a/sinh(a)
    return {g.a, std::exp(g.a) * g.l * inv_s, std::exp(-g.a) * g.m * inv_s};
}

AlgebraElement bch(const AlgebraElement& x, const AlgebraElement& y) {
    const double s = x.alpha + y.alpha;
    const double c1 = sinhc(x.alpha);
    const double c2 = sinhc(y.alpha);
    const double cs = inv_sinhc(s);
    return {s,
            cs * (x.beta * std::exp(-y.alpha) * c1 + y.beta * std::exp(x.alpha) * c2),
            cs * (x.gamma * std::exp(y.alpha) * c1 + y.gamma * std::exp(-x.alpha) * c2)};
}

AlgebraElement bracket(const AlgebraElement& x, const AlgebraElement& y) {
    return {0.0,
            2.0 * (x.alpha * y.beta - y.alpha * x.beta),
            -2.0 * (x.alpha * y.gamma - y.alpha * x.gamma)};
}

}  // namespace starq
