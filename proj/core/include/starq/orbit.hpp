#pragma once

#include <functional>
#include <stdexcept>
#include <utility>

#include "starq/lie.hpp"
#include "starq/numeric.hpp"

namespace starq {

// Point (a, l) on the hyperbolic-cylinder orbit chart.
struct OrbitPoint {
    double a = 0.0;
    double l = 0.0;
};

// Value and partial derivatives up to second order at a point.
struct Jet2 {
    cplx f{};
    cplx fa{}, fl{};
    cplx faa{}, fal{}, fll{};
};

// Smooth function on the orbit with closed-form derivatives when available.
// Exact evaluators keep invariance tests free of grid interpolation error.
class AnalyticField {
  public:
    using Evaluator = std::function<cplx(OrbitPoint)>;
    using JetEvaluator = std::function<Jet2(OrbitPoint)>;

    AnalyticField() = default;
    explicit AnalyticField(Evaluator f) : eval_(std::move(f)) {}
    AnalyticField(Evaluator f, JetEvaluator j) : eval_(std::move(f)), jet_(std::move(j)) {}

    static AnalyticField from_jet(JetEvaluator j) {
        AnalyticField f;
        f.jet_ = std::move(j);
        f.eval_ = [je = f.jet_](OrbitPoint p) { return je(p).f; };
        return f;
    }

    cplx operator()(OrbitPoint p) const { return eval_(p); }
    bool has_derivatives() const { return static_cast<bool>(jet_); }
    Jet2 jet(OrbitPoint p) const {
        if (!jet_) throw std::logic_error("AnalyticField: derivative data unavailable");
        return jet_(p);
    }

  private:
    Evaluator eval_;
    JetEvaluator jet_;
};

// Left action of the group on the orbit.
OrbitPoint coadjoint_act(const GroupElement& g, OrbitPoint p);

// Moment functions: lambda_H = 2l, lambda_E = e^{-2a}, lambda_F = -e^{2a},
// extended linearly.
double moment(const AlgebraElement& x, OrbitPoint p);
AnalyticField moment_field(const AlgebraElement& x);

// Poisson bracket from the symplectic form 2 da^dl:
// {f,h} = (1/2)(df/da dh/dl - df/dl dh/da).
cplx poisson(const AnalyticField& f, const AnalyticField& h, OrbitPoint p);

// Components (d/da, d/dl) of the fundamental vector field of x.
struct TangentVector {
    double da = 0.0;
    double dl = 0.0;
};
TangentVector fundamental_field(const AlgebraElement& x, OrbitPoint p);

// g*f = f(g . ), with jets composed through the affine-in-l action.
AnalyticField pullback(const GroupElement& g, const AnalyticField& f);

}  // namespace starq
