#include <doctest.h>

#include <cmath>

#include "starq/orbit.hpp"
#include "starq/rng.hpp"
#include "starq/scenario.hpp"

using namespace starq;

TEST_CASE("coadjoint action substitution and axioms") {
    const OrbitPoint p = coadjoint_act({0, 0, 0.7}, {0.0, 1.1});
    CHECK(p.a == doctest::Approx(0.0));
    CHECK(p.l == doctest::Approx(1.8));

    const OrbitPoint q{0.4, -0.9};
    const OrbitPoint qe = coadjoint_act(GroupElement::identity(), q);
    CHECK(qe.a == q.a);
    CHECK(qe.l == q.l);

    Rng rng(1);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const GroupElement g1{rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2)};
        const GroupElement g2{rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2)};
        const OrbitPoint pt{rng.uniform(-2, 2), rng.uniform(-4, 4)};
        const OrbitPoint lhs = coadjoint_act(group_mul(g1, g2), pt);
        const OrbitPoint rhs = coadjoint_act(g1, coadjoint_act(g2, pt));
        worst = std::max(worst, std::abs(lhs.l - rhs.l) / std::max(1.0, std::abs(rhs.l)));
        worst = std::max(worst, std::abs(lhs.a - rhs.a));
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("moment functions") {
    CHECK(moment(AlgebraElement::H(), {1.7, 3.0}) == doctest::Approx(6.0));
    CHECK(moment(AlgebraElement::E(), {0.0, 5.0}) == doctest::Approx(1.0));
    CHECK(moment(AlgebraElement::F(), {0.0, -2.0}) == doctest::Approx(-1.0));
    CHECK(moment(AlgebraElement{}, {0.3, 0.9}) == 0.0);
}

TEST_CASE("poisson bracket is the bracket homomorphism") {
    Rng rng(2);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const AlgebraElement x{rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2)};
        const AlgebraElement y{rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2)};
        const OrbitPoint p{rng.uniform(-1.5, 1.5), rng.uniform(-4, 4)};
        const cplx pb = poisson(moment_field(x), moment_field(y), p);
        const double want = moment(bracket(x, y), p);
        worst = std::max(worst, std::abs(pb - want) / std::max(1.0, std::abs(want)));
    }
    CHECK(worst < 1e-10);

    // {lambda_H, lambda_E} = 2 lambda_E pointwise, {lambda_E, lambda_F} = 0
    const OrbitPoint p{0.35, -1.2};
    CHECK(std::abs(poisson(moment_field(AlgebraElement::H()), moment_field(AlgebraElement::E()), p) -
                   2.0 * moment(AlgebraElement::E(), p)) < 1e-14);
    CHECK(std::abs(poisson(moment_field(AlgebraElement::E()), moment_field(AlgebraElement::F()), p)) <
          1e-14);
    const AnalyticField f = make_gaussian_field(1.0, 1.0, 0.2, 0.3);
    CHECK(std::abs(poisson(f, f, p)) < 1e-14);
}

TEST_CASE("poisson requires derivative data") {
    const AnalyticField bare([](OrbitPoint) { return cplx(1.0); });
    CHECK_THROWS_AS(poisson(bare, bare, {0, 0}), std::logic_error);
}

TEST_CASE("fundamental fields") {
    const TangentVector h = fundamental_field(AlgebraElement::H(), {0.3, 1.0});
    CHECK(h.da == doctest::Approx(-1.0));
    CHECK(h.dl == 0.0);
    const TangentVector e = fundamental_field(AlgebraElement::E(), {0.0, 2.0});
    CHECK(e.da == 0.0);
    CHECK(e.dl == doctest::Approx(-1.0));
    const TangentVector z = fundamental_field(AlgebraElement{}, {0.5, 0.5});
    CHECK(z.da == 0.0);
    CHECK(z.dl == 0.0);

    // directional derivative of lambda_Y along X* equals lambda_[X,Y]
    Rng rng(9);
    double worst = 0.0;
    for (int i = 0; i < 500; ++i) {
        const AlgebraElement x{rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2)};
        const AlgebraElement y{rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2)};
        const OrbitPoint p{rng.uniform(-1.5, 1.5), rng.uniform(-4, 4)};
        const TangentVector v = fundamental_field(x, p);
        const Jet2 j = moment_field(y).jet(p);
        const cplx got = v.da * j.fa + v.dl * j.fl;
        const double want = moment(bracket(x, y), p);
        worst = std::max(worst, std::abs(got - want) / std::max(1.0, std::abs(want)));
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("pullback evaluation, jets, and contravariance") {
    const AnalyticField f = make_gaussian_field(1.0, 1.0, 0.3, 0.4);
    const GroupElement g{0.4, -0.6, 0.5};

    const AnalyticField pf = pullback(g, f);
    const OrbitPoint p{0.2, 1.3};
    CHECK(std::abs(pf(p) - f(coadjoint_act(g, p))) == 0.0);

    // identity and constants
    const AnalyticField id_pb = pullback(GroupElement::identity(), f);
    CHECK(std::abs(id_pb(p) - f(p)) == 0.0);
    const AnalyticField cst([](OrbitPoint) { return cplx(2.5); });
    CHECK(std::abs(pullback(g, cst)(p) - cplx(2.5)) == 0.0);

    // jets against central differences
    const Jet2 j = pf.jet(p);
    const double h = 1e-5;
    auto num = [&](double da, double dl) { return pf({p.a + da, p.l + dl}); };
    CHECK(std::abs(j.fa - (num(h, 0) - num(-h, 0)) / (2 * h)) < 1e-8);
    CHECK(std::abs(j.fl - (num(0, h) - num(0, -h)) / (2 * h)) < 1e-8);
    CHECK(std::abs(j.faa - (num(h, 0) - 2.0 * num(0, 0) + num(-h, 0)) / (h * h)) < 1e-5);
    CHECK(std::abs(j.fll - (num(0, h) - 2.0 * num(0, 0) + num(0, -h)) / (h * h)) < 1e-5);
    CHECK(std::abs(j.fal -
                   (num(h, h) - num(h, -h) - num(-h, h) + num(-h, -h)) / (4 * h * h)) < 1e-6);

    // contravariance
    Rng rng(4);
    double worst = 0.0;
    for (int i = 0; i < 300; ++i) {
        const GroupElement g1{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
        const GroupElement g2{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
        const OrbitPoint q{rng.uniform(-1, 1), rng.uniform(-2, 2)};
        const cplx lhs = pullback(group_mul(g1, g2), f)(q);
        const cplx rhs = pullback(g2, pullback(g1, f))(q);
        worst = std::max(worst, std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)));
    }
    CHECK(worst < 1e-13);
}
