// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Tolerances are pinned here and nowhere else.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "starq/intertwiner.hpp"
#include "starq/lie.hpp"
#include "starq/moyal.hpp"
#include "starq/oscint.hpp"
#include "starq/rng.hpp"
#include "starq/scenario.hpp"
#include "starq/starexp.hpp"

using namespace starq;

namespace {

int g_failures = 0;

double now_s() {
    return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

void report(int id, const std::string& name, bool pass, double measured, const char* rel,
            double tol, double t0) {
    std::printf("[%s] %2d. %-38s measured=%.3e %s %.0e  (%.1fs)\n", pass ? "PASS" : "FAIL", id,
                name.c_str(), measured, rel, tol, now_s() - t0);
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

double rel3(const GroupElement& g, const GroupElement& h) {
    double w = std::abs(g.a - h.a) / std::max(1.0, std::abs(h.a));
    w = std::max(w, std::abs(g.l - h.l) / std::max(1.0, std::abs(h.l)));
    return std::max(w, std::abs(g.m - h.m) / std::max(1.0, std::abs(h.m)));
}

double rel3(const AlgebraElement& x, const AlgebraElement& y) {
    double w = std::abs(x.alpha - y.alpha) / std::max(1.0, std::abs(y.alpha));
    w = std::max(w, std::abs(x.beta - y.beta) / std::max(1.0, std::abs(y.beta)));
    return std::max(w, std::abs(x.gamma - y.gamma) / std::max(1.0, std::abs(y.gamma)));
}

const GridSpec kGrid(3.0, 12.0, 256, 256);

// 1. exact algebra: group axioms, exp/log roundtrips, bch factorization
void criterion_1() {
    const double t0 = now_s();
    Rng rng(1);
    double worst = 0.0;
    for (int c = 0; c < 1000; ++c) {
        const GroupElement g1{rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(-3, 3)};
        const GroupElement g2{rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(-3, 3)};
        const GroupElement g3{rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(-3, 3)};
        worst = std::max(worst, rel3(group_mul(group_mul(g1, g2), g3),
                                     group_mul(g1, group_mul(g2, g3))));
        worst = std::max(worst, rel3(group_mul(g1, group_inv(g1)), GroupElement::identity()));

        AlgebraElement x{rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5)};
        AlgebraElement y{rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5)};
        switch (c % 5) {  // singular-limit neighborhoods down to 1e-6
            case 1: x.alpha = 1e-6 * rng.uniform(-1, 1); break;
            case 2: y.alpha = 1e-6 * rng.uniform(-1, 1); break;
            case 3: y.alpha = -x.alpha + 1e-6 * rng.uniform(-1, 1); break;
            default: break;
        }
        worst = std::max(worst, rel3(group_log(group_exp(x)), x));
        worst = std::max(worst, rel3(bch(x, y),
                                     group_log(group_mul(group_exp(x), group_exp(y)))));
    }
    report(1, "exact-algebra suite", worst <= 1e-12, worst, "<=", 1e-12, t0);
}

// 2. moment-map homomorphism at 1000 random points
void criterion_2() {
    const double t0 = now_s();
    Rng rng(2);
    double worst = 0.0;
    for (int c = 0; c < 1000; ++c) {
        const AlgebraElement x{rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2)};
        const AlgebraElement y{rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2)};
        const OrbitPoint p{rng.uniform(-1.5, 1.5), rng.uniform(-4, 4)};
        const cplx pb = poisson(moment_field(x), moment_field(y), p);
        const double want = moment(bracket(x, y), p);
        worst = std::max(worst, std::abs(pb - want) / std::max(1.0, std::abs(want)));
    }
    report(2, "moment-map homomorphism", worst <= 1e-10, worst, "<=", 1e-10, t0);
}

// 3. covariance for all nine basis pairs, three thetas
void criterion_3() {
    const double t0 = now_s();
    const SampledField f = sample(make_gaussian_field(1.0, 1.0, 0.0, 0.0), kGrid);
    const AlgebraElement basis[3] = {AlgebraElement::H(), AlgebraElement::E(),
                                     AlgebraElement::F()};
    double worst = 0.0;
    for (double theta : {0.1, 0.5, 1.0})
        for (const auto& x : basis)
            for (const auto& y : basis)
                worst = std::max(worst, covariance_residual(x, y, f, theta));
    report(3, "covariance residuals", worst <= 1e-6, worst, "<=", 1e-6, t0);
}

// 4. oscillatory-integral regularization
void criterion_4() {
    const double t0 = now_s();
    const double theta = 2.0;
    FactoredAmplitude schwartz;
    schwartz.f1 = [](double u) { return cplx(std::exp(-std::pow(std::sinh(2 * u), 2))); };
    schwartz.f2 = [](double u) { return cplx(std::exp(-0.8 * std::pow(std::sinh(2 * u), 2))); };
    schwartz.g1 = [](double l) { return cplx(std::exp(-l * l)); };
    schwartz.g2 = [](double l) { return cplx(std::exp(-0.9 * l * l)); };
    const OscGrids sg{{1.6, 192}, {1.6, 192}, {7.0, 128}, {7.0, 128}, 0.15};
    const OscResult direct = osc_integral(schwartz, theta, {0, 0, 0, 0}, sg);
    const OscResult reg = osc_integral(schwartz, theta, {2, 2, 2, 2}, sg);
    const double rel_s = std::abs(reg.value - direct.value) / std::abs(direct.value);

    FactoredAmplitude poly;
    poly.f1 = [](double u) { return cplx(std::exp(-std::pow(std::sinh(2 * u), 2))); };
    poly.f2 = [](double u) { return cplx(std::exp(-0.7 * std::pow(std::sinh(2 * u), 2))); };
    poly.g1 = [](double l) { return cplx(1.0 + 0.1 * l); };
    poly.g2 = [](double l) { return cplx(1.0 / (1.0 + 0.25 * l * l)); };
    const OscGrids pg{{1.7, 192}, {1.7, 192}, {220.0, 8192}, {220.0, 8192}, 0.15};
    const OscResult o2 = osc_integral(poly, theta, {2, 2, 2, 2}, pg);
    const OscResult o3 = osc_integral(poly, theta, {3, 3, 3, 3}, pg);
    const double rel_p = std::abs(o2.value - o3.value) / std::abs(o3.value);

    const double worst = std::max(rel_s, rel_p);
    report(4, "oscillatory regularization", worst <= 1e-6, worst, "<=", 1e-6, t0);
}

// 5. intertwiner consistency across theta
void criterion_5() {
    const double t0 = now_s();
    const SampledField f = sample(make_gaussian_field(1.0, 1.0, 0.0, 0.0), kGrid);
    const SampledField h = sample(make_gaussian_field(1.4, 0.8, 0.4, 0.0), kGrid);
    double worst = 0.0;
    for (double theta : {0.2, 0.5, 1.0}) {
        const DeformationProfile prof = DeformationProfile::tracial(theta);
        const SampledField direct = invariant_product(f, h, prof);
        const SampledField pipe =
            apply_T(prof, moyal_product(apply_T_inv(prof, f), apply_T_inv(prof, h), theta));
        worst = std::max(worst, rel_l2_diff(pipe, direct));
    }
    report(5, "intertwiner consistency", worst <= 1e-4, worst, "<=", 1e-4, t0);
}

// 6. invariance with the covariant-only control
void criterion_6() {
    const double t0 = now_s();
    const AnalyticField f = make_gaussian_field(1.0, 1.0, 0.0, 0.0);
    const AnalyticField h = make_gaussian_field(1.4, 0.8, 0.4, 0.0);
    const DeformationProfile prof = DeformationProfile::tracial(0.5);
    Rng rng(8);
    std::vector<OrbitPoint> pts(32);
    for (auto& p : pts) p = {rng.uniform(-0.8, 0.8), rng.uniform(-3.0, 3.0)};
    const GroupElement gs[5] = {{0.3, 0.5, -0.2},
                                {-0.25, 0.0, 0.4},
                                {0.0, 0.6, 0.3},
                                {0.2, -0.4, 0.0},
                                {-0.15, 0.3, 0.25}};
    double worst = 0.0;
    for (const auto& g : gs)
        worst = std::max(worst, invariance_residual(g, f, h, prof, kGrid, pts, false));
    const double control = invariance_residual(gs[0], f, h, prof, kGrid, pts, true);
    const bool pass = worst <= 1e-3 && control > 1e-3;
    std::printf("     (control residual of the covariant-only product: %.3e > 1e-3)\n", control);
    report(6, "invariance residuals", pass, worst, "<=", 1e-3, t0);
}

// 7. tracial identity with the unit-profile witness
void criterion_7() {
    const double t0 = now_s();
    const SampledField f = sample(make_gaussian_field(1.0, 1.0, 0.0, 0.0), kGrid);
    const SampledField h = sample(make_gaussian_field(1.4, 0.8, 0.4, 0.0), kGrid);
    const TraceDefect good = trace_defect(f, h, DeformationProfile::tracial(0.5));
    const TraceDefect bad = trace_defect(f, h, DeformationProfile::unit(0.5));
    const bool pass = good.defect <= 1e-4 && bad.defect > 1e-2;
    std::printf("     (unit-profile witness defect: %.3e > 1e-2)\n", bad.defect);
    report(7, "tracial identity", pass, good.defect, "<=", 1e-4, t0);
}

// 8. second-order residual decay of the flow equation
void criterion_8() {
    const double t0 = now_s();
    double worst_dev = 0.0;
    for (const auto& x : {AlgebraElement::H(), AlgebraElement::E(), AlgebraElement::F()}) {
        const double r1 = ode_residual(x, 0.5, 0.5, 0.04);
        const double r2 = ode_residual(x, 0.5, 0.5, 0.02);
        worst_dev = std::max(worst_dev, std::abs(std::log2(r1 / r2) - 2.0));
    }
    report(8, "flow-equation order (|order-2|)", worst_dev <= 0.2, worst_dev, "<=", 0.2, t0);
}

// 9. bch property through the multiplier action
void criterion_9() {
    const double t0 = now_s();
    const DeformationProfile prof = DeformationProfile::tracial(0.5);
    const SampledField f = sample(make_gaussian_field(1.0, 1.0, 0.0, 0.0), kGrid);
    double worst_comm = 0.0;
    worst_comm = std::max(worst_comm,
                          bch_residual(AlgebraElement::H() * 0.4, AlgebraElement{}, prof, f));
    worst_comm = std::max(
        worst_comm, bch_residual(AlgebraElement::H() * 0.3, AlgebraElement::H() * 0.2, prof, f));
    Rng rng(3);
    double worst = 0.0;
    for (int c = 0; c < 20; ++c) {
        const double s = 0.5 / std::sqrt(3.0);
        const AlgebraElement x{rng.uniform(-s, s), rng.uniform(-s, s), rng.uniform(-s, s)};
        const AlgebraElement y{rng.uniform(-s, s), rng.uniform(-s, s), rng.uniform(-s, s)};
        worst = std::max(worst, bch_residual(x, y, prof, f));
    }
    const bool pass = worst <= 1e-2 && worst_comm <= 1e-3;
    std::printf("     (commuting-case residual: %.3e <= 1e-3)\n", worst_comm);
    report(9, "bch multiplier property", pass, worst, "<=", 1e-2, t0);
}

// 10. semiclassical limit
void criterion_10() {
    const double t0 = now_s();
    const SampledField f = sample(make_gaussian_field(1.0, 1.0, 0.0, 0.0), kGrid);
    const SampledField h = sample(make_gaussian_field(1.4, 0.8, 0.4, 0.0), kGrid);
    SampledField fh(kGrid, Domain::Position);
    for (size_t i = 0; i < fh.values.size(); ++i) fh.values[i] = f.values[i] * h.values[i];
    const std::vector<double> thetas{0.4, 0.2, 0.1, 0.05};
    std::vector<double> perr, cerr;
    const AnalyticField fa = make_gaussian_field(1.0, 1.0, 0.0, 0.0);
    const AnalyticField ha = make_gaussian_field(1.4, 0.8, 0.4, 0.0);
    SampledField pois(kGrid, Domain::Position);
    for (int i = 0; i < kGrid.n_a; ++i)
        for (int j = 0; j < kGrid.n_l; ++j)
            pois.at(i, j) = poisson(fa, ha, {kGrid.a(i), kGrid.l(j)});
    for (double th : thetas) {
        perr.push_back(rel_l2_diff(invariant_product(f, h, DeformationProfile::tracial(th)), fh));
        const SampledField ab = moyal_product(f, h, th);
        const SampledField ba = moyal_product(h, f, th);
        SampledField q(kGrid, Domain::Position);
        const cplx den(0.0, -th);
        for (size_t i = 0; i < q.values.size(); ++i)
            q.values[i] = (ab.values[i] - ba.values[i]) / den;
        cerr.push_back(rel_l2_diff(q, pois));
    }
    auto order = [&](const std::vector<double>& errs) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (size_t i = 0; i < errs.size(); ++i) {
            const double x = std::log(thetas[i]), y = std::log(errs[i]);
            sx += x; sy += y; sxx += x * x; sxy += x * y;
        }
        const double n = static_cast<double>(errs.size());
        return (n * sxy - sx * sy) / (n * sxx - sx * sx);
    };
    const double po = order(perr), co = order(cerr);
    const bool pass = po >= 0.95 && co >= 0.95 && cerr.back() < cerr.front();
    std::printf("     (product order %.2f, commutator-to-poisson order %.2f)\n", po, co);
    report(10, "semiclassical limit (order)", pass, std::min(po, co), ">=", 0.95, t0);
}

// 11. multiplier property: seminorm scans bounded under window doubling
void criterion_11() {
    const double t0 = now_s();
    const DeformationProfile prof = DeformationProfile::tracial(0.5);
    const StarExponential ex = star_exp(AlgebraElement::H(), 0.5, prof);
    const std::vector<SeminormIndex> idxs{{0, 0, 0, 0}, {1, 0, 0, 0}, {0, 1, 0, 0},
                                          {0, 0, 1, 0}, {0, 0, 0, 1}, {1, 0, 1, 0}};
    std::vector<double> base;
    double worst_ratio = 0.0;
    for (const double aw : {3.0, 4.0, 5.0}) {
        const GridSpec g(aw, 12.0, aw > 3.0 ? 512 : 256, 256);
        std::vector<SampledField> panel;
        for (const auto& pf : standard_panel()) panel.push_back(sample(pf, g));
        for (size_t q = 0; q < idxs.size(); ++q) {
            const double v = multiplier_seminorm_scan(ex, panel, idxs[q]);
            if (aw == 3.0)
                base.push_back(v);
            else
                worst_ratio = std::max(worst_ratio, v / std::max(base[q], 1e-12));
        }
    }
    report(11, "multiplier seminorm boundedness", worst_ratio <= 2.0, worst_ratio, "<=", 2.0, t0);
}

}  // namespace

int main() {
    std::printf("acceptance suite (grid %dx%d on [-%g,%g]x[-%g,%g])\n", kGrid.n_a, kGrid.n_l,
                kGrid.a_half, kGrid.a_half, kGrid.l_half, kGrid.l_half);
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    criterion_11();
    std::printf("%s\n", g_failures == 0 ? "ALL CRITERIA PASSED" : "CRITERIA FAILED");
    return g_failures == 0 ? 0 : 1;
}
