#include "starq/orbit.hpp"

#include <cmath>

namespace starq {

OrbitPoint coadjoint_act(const GroupElement& g, OrbitPoint p) {
    const double em = std::exp(-2.0 * p.a);
    const double ep = std::exp(2.0 * p.a);
    OrbitPoint r{g.a + p.a, p.l + em * g.l + ep * g.m};
    if (!std::isfinite(r.a) || !std::isfinite(r.l))
        throw std::range_error("coadjoint_act: non-finite result");
    return r;
}

double moment(const AlgebraElement& x, OrbitPoint p) {
    return x.alpha * 2.0 * p.l + x.beta * std::exp(-2.0 * p.a) - x.gamma * std::exp(2.0 * p.a);
}

AnalyticField moment_field(const AlgebraElement& x) {
    return AnalyticField::from_jet([x](OrbitPoint p) {
        const double em = std::exp(-2.0 * p.a);
        const double ep = std::exp(2.0 * p.a);
        Jet2 j;
        j.f = x.alpha * 2.0 * p.l + x.beta * em - x.gamma * ep;
        j.fa = -2.0 * x.beta * em - 2.0 * x.gamma * ep;
        j.fl = 2.0 * x.alpha;
        j.faa = 4.0 * x.beta * em - 4.0 * x.gamma * ep;
        j.fal = 0.0;
        j.fll = 0.0;
        return j;
    });
}

cplx poisson(const AnalyticField& f, const AnalyticField& h, OrbitPoint p) {
    if (!f.has_derivatives() || !h.has_derivatives())
        throw std::logic_error("poisson: fields must carry derivative data");
    const Jet2 jf = f.jet(p);
    const Jet2 jh = h.jet(p);
    return 0.5 * (jf.fa * jh.fl - jf.fl * jh.fa);
}

TangentVector fundamental_field(const AlgebraElement& x, OrbitPoint p) {
    return {-x.alpha, -x.beta * std::exp(-2.0 * p.a) - x.gamma * std::exp(2.0 * p.a)};
}

AnalyticField pullback(const GroupElement& g, const AnalyticField& f) {
    auto eval = [g, f](OrbitPoint p) { return f(coadjoint_act(g, p)); };
    if (!f.has_derivatives()) return AnalyticField(eval);
    auto jet = [g, f](OrbitPoint p) {
        const double em = std::exp(-2.0 * p.a);
        const double ep = std::exp(2.0 * p.a);
        // q = (a_g + a, l + em*l_g + ep*m_g); dq_l/da and its a-derivative
        const double J = -2.0 * em * g.l + 2.0 * ep * g.m;
        const double Jp = 4.0 * em * g.l + 4.0 * ep * g.m;
        const Jet2 u = f.jet(coadjoint_act(g, p));
        Jet2 r;
        r.f = u.f;
        r.fa = u.fa + u.fl * J;
        r.fl = u.fl;
        r.faa = u.faa + 2.0 * u.fal * J + u.fll * J * J + u.fl * Jp;
        r.fal = u.fal + u.fll * J;
        r.fll = u.fll;
        return r;
    };
    return AnalyticField(eval, jet);
}

}  // namespace starq
