#pragma once

#include "starq/numeric.hpp"

namespace starq {

// Element alpha*H + beta*E + gamma*F of the solvable algebra with
// [H,E] = 2E, [H,F] = -2F, [E,F] = 0.
struct AlgebraElement {
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;

    static AlgebraElement H() { return {1.0, 0.0, 0.0}; }
    static AlgebraElement E() { return {0.0, 1.0, 0.0}; }
    static AlgebraElement F() { return {0.0, 0.0, 1.0}; }

    AlgebraElement operator+(const AlgebraElement& o) const {
        return {alpha + o.alpha, beta + o.beta, gamma + o.gamma};
    }
    AlgebraElement operator-(const AlgebraElement& o) const {
        return {alpha - o.alpha, beta - o.beta, gamma - o.gamma};
    }
    AlgebraElement operator*(double s) const { return {alpha * s, beta * s, gamma * s}; }
    double norm() const;
};

inline AlgebraElement operator*(double s, const AlgebraElement& x) { return x * s; }

// Group element in the global chart (a, l, m); identity is (0, 0, 0).
struct GroupElement {
    double a = 0.0;
    double l = 0.0;
    double m = 0.0;

    static GroupElement identity() { return {}; }
};

GroupElement group_mul(const GroupElement& g1, const GroupElement& g2);
GroupElement group_inv(const GroupElement& g);

// One-parameter subgroup through t*X.
GroupElement group_exp(const AlgebraElement& x, double t = 1.0);

// Inverse of group_exp on the chart.
AlgebraElement group_log(const GroupElement& g);

// log(exp(x) exp(y)) in closed form.
AlgebraElement bch(const AlgebraElement& x, const AlgebraElement& y);

// Bilinear bracket.
AlgebraElement bracket(const AlgebraElement& x, const AlgebraElement& y);

}  // namespace starq
