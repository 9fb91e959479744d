#include "starq/scenario.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "starq/intertwiner.hpp"
#include "starq/lie.hpp"
#include "starq/moyal.hpp"
#include "starq/oscint.hpp"
#include "starq/rng.hpp"
#include "starq/starexp.hpp"

namespace starq {

namespace {

const std::vector<std::string> kSuites = {"group",      "orbit",   "covariance", "product",
                                          "trace",      "invariance", "star-exp", "bch", "all"};

double now_s() {
    return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch()).count();
}

std::string fnv_digest(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

struct Checker {
    Report* report;
    std::string digest_base;

    void add(const std::string& name, const std::string& tag, double value, double tol,
             PassMode mode, double t0) {
        CheckRecord r;
        r.name = name;
        r.tag = tag;
        r.inputs_digest = fnv_digest(digest_base + "|" + name);
        r.value = value;
        r.tolerance = tol;
        r.mode = mode;
        r.passed = mode == PassMode::UpperBound ? value <= tol : value >= tol;
        r.runtime_s = now_s() - t0;
        report->checks.push_back(std::move(r));
    }
};

double rel_err(double got, double want) {
    return std::abs(got - want) / std::max(1.0, std::abs(want));
}

double rel_err(const GroupElement& g, const GroupElement& h) {
    double w = 0.0;
    w = std::max(w, std::abs(g.a - h.a) / std::max(1.0, std::abs(h.a)));
    w = std::max(w, std::abs(g.l - h.l) / std::max(1.0, std::abs(h.l)));
    w = std::max(w, std::abs(g.m - h.m) / std::max(1.0, std::abs(h.m)));
    return w;
}

double rel_err(const AlgebraElement& x, const AlgebraElement& y) {
    double w = 0.0;
    w = std::max(w, std::abs(x.alpha - y.alpha) / std::max(1.0, std::abs(y.alpha)));
    w = std::max(w, std::abs(x.beta - y.beta) / std::max(1.0, std::abs(y.beta)));
    w = std::max(w, std::abs(x.gamma - y.gamma) / std::max(1.0, std::abs(y.gamma)));
    return w;
}

AlgebraElement random_algebra(Rng& rng, double scale) {
    return {rng.uniform(-scale, scale), rng.uniform(-scale, scale), rng.uniform(-scale, scale)};
}

GroupElement random_group(Rng& rng, double scale) {
    return {rng.uniform(-scale, scale), rng.uniform(-scale, scale), rng.uniform(-scale, scale)};
}

double tol_for(const ScenarioConfig& cfg, const std::string& suite, double dflt) {
    auto it = cfg.tolerances.find(suite);
    return it == cfg.tolerances.end() ? dflt : it->second;
}

DeformationProfile make_profile(const ScenarioConfig& cfg, double theta) {
    if (cfg.profile == "unit") return DeformationProfile::unit(theta);
    return DeformationProfile::tracial(theta);
}

// Least-squares slope of log(err) against log(h); orders reported from the
// finest pair when only two levels exist.
double fit_order(const std::vector<double>& h, const std::vector<double>& err) {
    const size_t n = h.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < n; ++i) {
        const double x = std::log(h[i]);
        const double y = std::log(std::max(err[i], 1e-300));
        sx += x; sy += y; sxx += x * x; sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// ---------------------------------------------------------------- suites --

void run_group_suite(const ScenarioConfig& cfg, Checker& ck) {
    const double tol = tol_for(cfg, "group", 1e-12);
    Rng rng(cfg.seed);
    {
        const double t0 = now_s();
        const GroupElement got = group_mul({1, 2, 3}, {-1, 0, 0});
        const GroupElement want{0.0, 2.0 * std::exp(2.0), 3.0 * std::exp(-2.0)};
        ck.add("group-law-example", "group-law", rel_err(got, want), 1e-14, PassMode::UpperBound, t0);
    }
    {
        const double t0 = now_s();
        double worst = 0.0;
        for (int c = 0; c < 1000; ++c) {
            const GroupElement g1 = random_group(rng, 3.0);
            const GroupElement g2 = random_group(rng, 3.0);
            const GroupElement g3 = random_group(rng, 3.0);
            worst = std::max(worst, rel_err(group_mul(group_mul(g1, g2), g3),
                                            group_mul(g1, group_mul(g2, g3))));
            worst = std::max(worst, rel_err(group_mul(g1, GroupElement::identity()), g1));
            worst = std::max(worst, rel_err(group_mul(g1, group_inv(g1)), GroupElement::identity()));
            worst = std::max(worst, rel_err(group_inv(group_inv(g2)), g2));
        }
        ck.add("group-axioms", "group-law", worst, tol, PassMode::UpperBound, t0);
    }
    {
        const double t0 = now_s();
        double worst = 0.0;
        for (int c = 0; c < 1000; ++c) {
            AlgebraElement x = random_algebra(rng, 2.0);
            if (c % 4 == 0) x.alpha = rng.uniform(-1.0, 1.0) * 1e-6;  // singular neighborhood
            worst = std::max(worst, rel_err(group_log(group_exp(x)), x));
            const GroupElement g = random_group(rng, 2.0);
            worst = std::max(worst, rel_err(group_exp(group_log(g)), g));
        }
        ck.add("exp-log-roundtrip", "group-exp", worst, tol, PassMode::UpperBound, t0);
    }
    {
        const double t0 = now_s();
        double worst = 0.0;
        for (int c = 0; c < 250; ++c) {
            const AlgebraElement x = random_algebra(rng, 1.5);
            const double s = rng.uniform(-1.5, 1.5);
            const double t = rng.uniform(-1.5, 1.5);
            worst = std::max(worst, rel_err(group_mul(group_exp(x, s), group_exp(x, t)),
                                            group_exp(x, s + t)));
        }
        ck.add("one-parameter-subgroup", "group-exp", worst, tol, PassMode::UpperBound, t0);
    }
    {
        const double t0 = now_s();
        double worst = 0.0;
        for (int c = 0; c < 1000; ++c) {
            AlgebraElement x = random_algebra(rng, 1.5);
            AlgebraElement y = random_algebra(rng, 1.5);
            switch (c % 5) {  // exercise every singular locus
                case 1: x.alpha = rng.uniform(-1.0, 1.0) * 1e-6; break;
                case 2: y.alpha = rng.uniform(-1.0, 1.0) * 1e-6; break;
                case 3: y.alpha = -x.alpha + rng.uniform(-1.0, 1.0) * 1e-6; break;
                default: break;
            }
            const AlgebraElement direct = bch(x, y);
            const AlgebraElement oracle = group_log(group_mul(group_exp(x), group_exp(y)));
            worst = std::max(worst, rel_err(direct, oracle));
        }
        ck.add("bch-vs-factorization", "bch-group", worst, tol, PassMode::UpperBound, t0);
    }
    {
        const double t0 = now_s();
        double worst = 0.0;
        for (int c = 0; c < 1000; ++c) {
            const AlgebraElement x = random_algebra(rng, 2.0);
            const AlgebraElement y = random_algebra(rng, 2.0);
            const AlgebraElement z = random_algebra(rng, 2.0);
            const AlgebraElement j =
                bracket(bracket(x, y), z) + bracket(bracket(y, z), x) + bracket(bracket(z, x), y);
            worst = std::max(worst, rel_err(j, AlgebraElement{}));
        }
        ck.add("bracket-jacobi", "bracket", worst, tol, PassMode::UpperBound, t0);
    }
}

void run_orbit_suite(const ScenarioConfig& cfg, Checker& ck) {
    const double tol = tol_for(cfg, "orbit", 1e-10);
    Rng rng(cfg.seed + 1);
    {
        const double t0 = now_s();
        double worst = 0.0;
        for (int c = 0; c < 1000; ++c) {
            const GroupElement g1 = random_group(rng, 2.0);
            const GroupElement g2 = random_group(rng, 2.0);
            const OrbitPoint p{rng.uniform(-2, 2), rng.uniform(-4, 4)};
            const OrbitPoint lhs = coadjoint_act(group_mul(g1, g2), p);
            const OrbitPoint rhs = coadjoint_act(g1, coadjoint_act(g2, p));
            worst = std::max(worst, std::abs(lhs.a - rhs.a) / std::max(1.0, std::abs(rhs.a)));
            worst = std::max(worst, std::abs(lhs.l - rhs.l) / std::max(1.0, std::abs(rhs.l)));
        }
        ck.add("action-axiom", "orbit-action", worst, 1e-12, PassMode::UpperBound, t0);
    }
    {
        const double t0 = now_s();
        double worst = rel_err(moment(AlgebraElement::H(), {0.7, 3.0}), 6.0);
        worst = std::max(worst, rel_err(moment(AlgebraElement::E(), {0.0, 1.3}), 1.0));
        worst = std::max(worst, rel_err(moment(AlgebraElement::F(), {0.0, -0.4}), -1.0));
        ck.add("moment-examples", "moment-map", worst, 1e-14, PassMode::UpperBound, t0);
    }
    {
        const double t0 = now_s();
        double worst = 0.0;
        for (int c = 0; c < 1000; ++c) {
            const AlgebraElement x = random_algebra(rng, 2.0);
            const AlgebraElement y = random_algebra(rng, 2.0);
            const OrbitPoint p{rng.uniform(-1.5, 1.5), rng.uniform(-4, 4)};
            const cplx pb = poisson(moment_field(x), moment_field(y), p);
            const double want = moment(bracket(x, y), p);
            worst = std::max(worst, std::abs(pb - want) / std::max(1.0, std::abs(want)));
        }
        ck.add("poisson-homomorphism", "moment-map", worst, tol, PassMode::UpperBound, t0);
    }
    {
        const double t0 = now_s();
        double worst = 0.0;
        for (int c = 0; c < 1000; ++c) {
            const AlgebraElement x = random_algebra(rng, 2.0);
            const AlgebraElement y = random_algebra(rng, 2.0);
            const OrbitPoint p{rng.uniform(-1.5, 1.5), rng.uniform(-4, 4)};
            const TangentVector v = fundamental_field(x, p);
            const Jet2 j = moment_field(y).jet(p);
            const cplx deriv = v.da * j.fa + v.dl * j.fl;
            const double want = moment(bracket(x, y), p);
            worst = std::max(worst, std::abs(deriv - want) / std::max(1.0, std::abs(want)));
        }
        ck.add("fundamental-equivariance", "fundamental-fields", worst, tol, PassMode::UpperBound, t0);
    }
    {
        const double t0 = now_s();
        const AnalyticField f = make_gaussian_field(1.0, 1.0, 0.3, 0.4);
        double worst = 0.0;
        for (int c = 0; c < 200; ++c) {
            const GroupElement g1 = random_group(rng, 1.0);
            const GroupElement g2 = random_group(rng, 1.0);
            const OrbitPoint p{rng.uniform(-1, 1), rng.uniform(-2, 2)};
            const cplx lhs = pullback(group_mul(g1, g2), f)(p);
            const cplx rhs = pullback(g2, pullback(g1, f))(p);
            worst = std::max(worst, std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)));
        }
        ck.add("pullback-contravariance", "pullback", worst, 1e-12, PassMode::UpperBound, t0);
    }
}

void run_covariance_suite(const ScenarioConfig& cfg, Checker& ck) {
    const double tol = tol_for(cfg, "covariance", 1e-6);
    const SampledField f = sample(make_gaussian_field(1.0, 1.0, 0.0, 0.0), cfg.grid);
    const AlgebraElement basis[3] = {AlgebraElement::H(), AlgebraElement::E(), AlgebraElement::F()};
    const char* names[3] = {"H", "E", "F"};
    for (double theta : cfg.theta_list) {
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                const double t0 = now_s();
                const double r = covariance_residual(basis[i], basis[j], f, theta);
                std::ostringstream nm;
                nm << "covariance-" << names[i] << names[j] << "@" << theta;
                ck.add(nm.str(), "moyal-covariance", r, tol, PassMode::UpperBound, t0);
            }
    }
}

void run_product_suite(const ScenarioConfig& cfg, Checker& ck) {
    // oscillatory integral: Schwartz amplitude, regularized vs direct
    {
        const double t0 = now_s();
        FactoredAmplitude amp;
        amp.f1 = [](double u) { return cplx(std::exp(-std::pow(std::sinh(2 * u), 2))); };
        amp.f2 = [](double u) { return cplx(std::exp(-0.8 * std::pow(std::sinh(2 * u), 2))); };
        amp.g1 = [](double l) { return cplx(std::exp(-l * l)); };
        amp.g2 = [](double l) { return cplx(std::exp(-0.9 * l * l)); };
        const OscGrids grids{{1.6, 192}, {1.6, 192}, {7.0, 128}, {7.0, 128}, 0.15};
        const double theta = 2.0;
        const OscResult reg = osc_integral(amp, theta, {2, 2, 2, 2}, grids);
        const OscResult direct = osc_integral(amp, theta, {0, 0, 0, 0}, grids);
        const double rel = std::abs(reg.value - direct.value) / std::abs(direct.value);
        ck.add("osc-schwartz-reg-vs-direct", "osc-regularization",
               rel, tol_for(cfg, "product", 1e-6), PassMode::UpperBound, t0);
    }
    {
        const double t0 = now_s();
        FactoredAmplitude amp;  // polynomially bounded in l, Schwartz in the warped a
        amp.f1 = [](double u) { return cplx(std::exp(-std::pow(std::sinh(2 * u), 2))); };
        amp.f2 = [](double u) { return cplx(std::exp(-0.7 * std::pow(std::sinh(2 * u), 2))); };
        amp.g1 = [](double l) { return cplx(1.0 + 0.1 * l); };
        amp.g2 = [](double l) { return cplx(1.0 / (1.0 + 0.25 * l * l)); };
        const OscGrids grids{{1.7, 192}, {1.7, 192}, {220.0, 8192}, {220.0, 8192}, 0.15};
        const double theta = 2.0;
        const OscResult o2 = osc_integral(amp, theta, {2, 2, 2, 2}, grids);
        const OscResult o3 = osc_integral(amp, theta, {3, 3, 3, 3}, grids);
        const double rel = std::abs(o2.value - o3.value) / std::abs(o3.value);
        ck.add("osc-order-independence", "osc-regularization", rel, tol_for(cfg, "product", 1e-6),
               PassMode::UpperBound, t0);
    }
    // intertwiner consistency per theta
    const SampledField f = sample(make_gaussian_field(1.0, 1.0, 0.0, 0.0), cfg.grid);
    const SampledField h = sample(make_gaussian_field(1.4, 0.8, 0.4, 0.0), cfg.grid);
    for (double theta : cfg.theta_list) {
        const double t0 = now_s();
        const DeformationProfile prof = make_profile(cfg, theta);
        const SampledField direct = invariant_product(f, h, prof);
        const SampledField pipeline =
            apply_T(prof, moyal_product(apply_T_inv(prof, f), apply_T_inv(prof, h), theta));
        std::ostringstream nm;
        nm << "intertwiner-consistency@" << theta << "-" << prof.name();
        ck.add(nm.str(), "intertwiner-consistency", rel_l2_diff(pipeline, direct),
               tol_for(cfg, "product", 1e-4), PassMode::UpperBound, t0);
    }
    {
        const double t0 = now_s();
        const double theta = 0.5;
        const SampledField u = sample(make_gaussian_field(0.8, 1.2, -0.3, 0.0), cfg.grid);
        const SampledField lhs = moyal_product(moyal_product(f, h, theta), u, theta);
        const SampledField rhs = moyal_product(f, moyal_product(h, u, theta), theta);
        ck.add("moyal-associativity@0.5", "product-associativity", rel_l2_diff(lhs, rhs), 1e-4,
               PassMode::UpperBound, t0);
    }
    {
        const double t0 = now_s();
        const double theta = 0.5;
        const DeformationProfile prof = make_profile(cfg, theta);
        const SampledField u = sample(make_gaussian_field(0.8, 1.2, -0.3, 0.0), cfg.grid);
        const SampledField lhs = invariant_product(invariant_product(f, h, prof), u, prof);
        const SampledField rhs = invariant_product(f, invariant_product(h, u, prof), prof);
        ck.add("invariant-associativity@0.5", "product-associativity", rel_l2_diff(lhs, rhs), 1e-3,
               PassMode::UpperBound, t0);
    }
    // semiclassical limits
    {
        const double t0 = now_s();
        const std::vector<double> thetas{0.4, 0.2, 0.1, 0.05};
        std::vector<double> errs;
        SampledField fh(cfg.grid, Domain::Position);
        for (size_t i = 0; i < fh.values.size(); ++i) fh.values[i] = f.values[i] * h.values[i];
        for (double th : thetas) {
            const DeformationProfile prof = make_profile(cfg, th);
            errs.push_back(rel_l2_diff(invariant_product(f, h, prof), fh));
        }
        const double order = fit_order(thetas, errs);
        ck.add("semiclassical-product-order", "semiclassical-limit", std::max(0.0, 1.0 - order),
               0.05, PassMode::UpperBound, t0);
    }
    {
        const double t0 = now_s();
        const AnalyticField fa = make_gaussian_field(1.0, 1.0, 0.0, 0.0);
        const AnalyticField ha = make_gaussian_field(1.4, 0.8, 0.4, 0.0);
        SampledField pois(cfg.grid, Domain::Position);
        for (int i = 0; i < cfg.grid.n_a; ++i)
            for (int j = 0; j < cfg.grid.n_l; ++j)
                pois.at(i, j) = poisson(fa, ha, {cfg.grid.a(i), cfg.grid.l(j)});
        const std::vector<double> thetas{0.4, 0.2, 0.1, 0.05};
        std::vector<double> errs;
        for (double th : thetas) {
            const SampledField comm_ab = moyal_product(f, h, th);
            const SampledField comm_ba = moyal_product(h, f, th);
            SampledField q(cfg.grid, Domain::Position);
            const cplx den(0.0, -th);
            for (size_t i = 0; i < q.values.size(); ++i)
                q.values[i] = (comm_ab.values[i] - comm_ba.values[i]) / den;
            errs.push_back(rel_l2_diff(q, pois));
        }
        const double order = fit_order(thetas, errs);
        ck.add("semiclassical-commutator-order", "semiclassical-limit", std::max(0.0, 1.0 - order),
               0.05, PassMode::UpperBound, t0);
    }
}

void run_trace_suite(const ScenarioConfig& cfg, Checker& ck) {
    const SampledField f = sample(make_gaussian_field(1.0, 1.0, 0.0, 0.0), cfg.grid);
    const SampledField h = sample(make_gaussian_field(1.4, 0.8, 0.4, 0.0), cfg.grid);
    for (double theta : cfg.theta_list) {
        {
            const double t0 = now_s();
            const TraceDefect d = trace_defect(f, h, DeformationProfile::tracial(theta));
            std::ostringstream nm;
            nm << "trace-tracial@" << theta;
            ck.add(nm.str(), "trace-identity", d.defect, tol_for(cfg, "trace", 1e-4),
                   PassMode::UpperBound, t0);
        }
        {
            const double t0 = now_s();
            const TraceDefect d = trace_defect(f, h, DeformationProfile::unit(theta));
            std::ostringstream nm;
            nm << "trace-unit-witness@" << theta;
            ck.add(nm.str(), "trace-witness", d.defect, 1e-2, PassMode::LowerBound, t0);
        }
    }
}

std::vector<OrbitPoint> sample_points(std::uint64_t seed, int n, double a_max, double l_max) {
    Rng rng(seed);
    std::vector<OrbitPoint> pts(static_cast<size_t>(n));
    for (auto& p : pts) p = {rng.uniform(-a_max, a_max), rng.uniform(-l_max, l_max)};
    return pts;
}

void run_invariance_suite(const ScenarioConfig& cfg, Checker& ck) {
    const double tol = tol_for(cfg, "invariance", 1e-3);
    const double theta = cfg.theta_list.front();
    const DeformationProfile prof = make_profile(cfg, theta);
    const AnalyticField f = make_gaussian_field(1.0, 1.0, 0.0, 0.0);
    const AnalyticField h = make_gaussian_field(1.4, 0.8, 0.4, 0.0);
    const auto pts = sample_points(cfg.seed + 7, 32, 0.8, 3.0);
    const GroupElement gs[5] = {
        {0.3, 0.5, -0.2}, {-0.25, 0.0, 0.4}, {0.0, 0.6, 0.3}, {0.2, -0.4, 0.0}, {-0.15, 0.3, 0.25}};
    for (int i = 0; i < 5; ++i) {
        const double t0 = now_s();
        const double r = invariance_residual(gs[i], f, h, prof, cfg.grid, pts, false);
        std::ostringstream nm;
        nm << "invariance-g" << i + 1;
        ck.add(nm.str(), "product-invariance", r, tol, PassMode::UpperBound, t0);
    }
    {
        const double t0 = now_s();
        const double r = invariance_residual(gs[0], f, h, prof, cfg.grid, pts, true);
        ck.add("invariance-moyal-control", "invariance-moyal-control", r, tol,
               PassMode::LowerBound, t0);
    }
}

void run_starexp_suite(const ScenarioConfig& cfg, Checker& ck) {
    const double theta = 0.5;
    const DeformationProfile prof = DeformationProfile::tracial(theta);
    {
        const AlgebraElement dirs[3] = {AlgebraElement::H(), AlgebraElement::E(),
                                        AlgebraElement::F()};
        const char* names[3] = {"H", "E", "F"};
        for (int d = 0; d < 3; ++d) {
            const double t0 = now_s();
            const double r1 = ode_residual(dirs[d], 0.5, theta, 0.04);
            const double r2 = ode_residual(dirs[d], 0.5, theta, 0.02);
            const double order = std::log2(r1 / r2);
            std::ostringstream nm;
            nm << "starexp-ode-order-" << names[d];
            ck.add(nm.str(), "starexp-ode", std::abs(order - 2.0),
                   tol_for(cfg, "star-exp", 0.2), PassMode::UpperBound, t0);
        }
    }
    {
        const double t0 = now_s();
        const SampledField f = sample(make_gaussian_field(1.0, 1.0, 0.0, 0.0), cfg.grid);
        const SampledField r = multiplier_apply(star_exp(AlgebraElement::H(), 0.0, prof), f);
        ck.add("starexp-unit-action", "starexp-unit", rel_l2_diff(r, f), 1e-8,
               PassMode::UpperBound, t0);
    }
    {
        const double t0 = now_s();
        Rng rng(cfg.seed + 11);
        double worst = 0.0;
        for (int c = 0; c < 50; ++c) {
            const AlgebraElement x = random_algebra(rng, 1.0);
            const double t = rng.uniform(-2.0, 2.0);
            const StarExponential ex = star_exp(x, t, prof);
            const OrbitPoint p{rng.uniform(-2, 2), rng.uniform(-6, 6)};
            worst = std::max(worst,
                             std::abs(std::abs(ex(p)) - std::sqrt(std::cosh(x.alpha * t))));
        }
        ck.add("starexp-constant-modulus", "starexp-modulus", worst, 1e-12, PassMode::UpperBound,
               t0);
    }
    {
        const double t0 = now_s();
        // seminorm boundedness of E(0.5 H) * f under window growth
        const StarExponential ex = star_exp(AlgebraElement::H(), 0.5, prof);
        const std::vector<SeminormIndex> idxs{{0, 0, 0, 0}, {1, 0, 0, 0}, {0, 1, 0, 0},
                                              {0, 0, 1, 0}, {0, 0, 0, 1}, {1, 0, 1, 0}};
        double worst_ratio = 0.0;
        std::vector<double> base;
        for (const double aw : {3.0, 4.0, 5.0}) {
            const GridSpec g(aw, cfg.grid.l_half, aw > 3.0 ? 512 : 256, cfg.grid.n_l);
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
        ck.add("multiplier-seminorm-bounded", "multiplier-seminorm", worst_ratio, 2.0,
               PassMode::UpperBound, t0);
    }
    {
        const double t0 = now_s();
        // closed form vs the conjugation pipeline, including a profile with
        // nonzero P'(0)
        double worst = 0.0;
        const GridSpec g(2.0, 24.0, 256, 512);
        const AnalyticField window(
            [](OrbitPoint p) { return cplx(plateau_window(p.l, 10.0, 22.0) *
                                           plateau_window(p.a, 1.2, 1.9)); });
        const DeformationProfile profs[3] = {
            DeformationProfile::tracial(theta), DeformationProfile::unit(theta),
            DeformationProfile::custom(
                theta, [](double s) { return 0.25 * s + 0.5 * log_cosh(s * 0.25); }, 0.0, false)};
        for (const auto& pr : profs) {
            for (const AlgebraElement& x :
                 {AlgebraElement::H(), AlgebraElement{1.0, 0.5, 0.0}}) {
                const double t = 0.4;
                const SampledField pipe = star_exp_via_pipeline(x, t, pr, g, window);
                const StarExponential closed = star_exp(x, t, pr);
                double num = 0.0, den = 0.0;
                for (int i = 0; i < g.n_a; ++i)
                    for (int j = 0; j < g.n_l; ++j) {
                        const OrbitPoint p{g.a(i), g.l(j)};
                        if (std::abs(p.a) > 1.0 || std::abs(p.l) > 6.0) continue;
                        num += std::norm(pipe.at(i, j) - closed(p));
                        den += std::norm(closed(p));
                    }
                worst = std::max(worst, std::sqrt(num / den));
            }
        }
        ck.add("starexp-pipeline-consistency", "starexp-conjugation", worst, 1e-3,
               PassMode::UpperBound, t0);
    }
}

void run_bch_suite(const ScenarioConfig& cfg, Checker& ck) {
    const double theta = 0.5;
    const DeformationProfile prof = DeformationProfile::tracial(theta);
    const SampledField f = sample(make_gaussian_field(1.0, 1.0, 0.0, 0.0), cfg.grid);
    const double tol_comm = 1e-3;
    const double tol_rand = tol_for(cfg, "bch", 1e-2);
    {
        const double t0 = now_s();
        const double r = bch_residual(AlgebraElement::H() * 0.4, AlgebraElement{}, prof, f);
        ck.add("bch-identity-argument", "bch-multiplier", r, tol_comm, PassMode::UpperBound, t0);
    }
    {
        const double t0 = now_s();
        const double r =
            bch_residual(AlgebraElement::H() * 0.3, AlgebraElement::H() * 0.2, prof, f);
        ck.add("bch-commuting", "bch-multiplier", r, tol_comm, PassMode::UpperBound, t0);
    }
    Rng rng(cfg.seed + 3);
    for (int c = 0; c < 20; ++c) {
        const double t0 = now_s();
        AlgebraElement x = random_algebra(rng, 0.5 / std::sqrt(3.0));
        AlgebraElement y = random_algebra(rng, 0.5 / std::sqrt(3.0));
        const double r = bch_residual(x, y, prof, f);
        std::ostringstream nm;
        nm << "bch-random-" << c + 1;
        ck.add(nm.str(), "bch-multiplier", r, tol_rand, PassMode::UpperBound, t0);
    }
}

}  // namespace

// ------------------------------------------------------------ public API --

void ScenarioConfig::validate() const {
    if (theta_list.empty()) throw std::invalid_argument("config: theta list must not be empty");
    for (double t : theta_list)
        if (!(t > 0.0)) throw std::invalid_argument("config: theta values must be positive");
    if (std::find(kSuites.begin(), kSuites.end(), suite) == kSuites.end())
        throw std::invalid_argument("config: unknown suite '" + suite + "'");
    if (profile != "tracial" && profile != "unit")
        throw std::invalid_argument("config: unknown profile '" + profile + "'");
}

bool Report::all_passed() const {
    for (const auto& c : checks)
        if (!c.passed) return false;
    return true;
}

Report run_scenario(const ScenarioConfig& cfg) {
    cfg.validate();
    Report rep;
    rep.kind = "run";
    rep.suite = cfg.suite;
    rep.profile = cfg.profile;
    rep.seed = cfg.seed;
    rep.theta_list = cfg.theta_list;
    {
        std::ostringstream g;
        g << cfg.grid.n_a << "x" << cfg.grid.n_l << "@[" << cfg.grid.a_half << ","
          << cfg.grid.l_half << "]";
        rep.grid_str = g.str();
    }
    std::ostringstream db;
    db << rep.grid_str << "|" << cfg.profile << "|seed=" << cfg.seed;
    for (double t : cfg.theta_list) db << "|" << t;
    Checker ck{&rep, db.str()};

    const bool all = cfg.suite == "all";
    if (all || cfg.suite == "group") run_group_suite(cfg, ck);
    if (all || cfg.suite == "orbit") run_orbit_suite(cfg, ck);
    if (all || cfg.suite == "covariance") run_covariance_suite(cfg, ck);
    if (all || cfg.suite == "product") run_product_suite(cfg, ck);
    if (all || cfg.suite == "trace") run_trace_suite(cfg, ck);
    if (all || cfg.suite == "invariance") run_invariance_suite(cfg, ck);
    if (all || cfg.suite == "star-exp") run_starexp_suite(cfg, ck);
    if (all || cfg.suite == "bch") run_bch_suite(cfg, ck);
    return rep;
}

Report convergence_study(const ScenarioConfig& cfg, int levels) {
    cfg.validate();
    if (levels < 2) throw std::invalid_argument("convergence_study: levels must be >= 2");
    Report rep;
    rep.kind = "converge";
    rep.suite = cfg.suite;
    rep.profile = cfg.profile;
    rep.seed = cfg.seed;
    rep.theta_list = cfg.theta_list;
    rep.grid_str = "multi";
    Checker ck{&rep, "converge"};
    {
        // dt halving for the exponential flow
        const double t0 = now_s();
        std::vector<double> hs, errs;
        double dt = 0.04;
        for (int l = 0; l < levels; ++l, dt /= 2.0) {
            hs.push_back(dt);
            errs.push_back(ode_residual(AlgebraElement::H(), 0.5, 0.5, dt));
        }
        ck.add("converge-ode-dt", "starexp-ode", std::abs(fit_order(hs, errs) - 2.0), 0.2,
               PassMode::UpperBound, t0);
    }
    {
        // theta halving for the semiclassical limit
        const double t0 = now_s();
        const SampledField f = sample(make_gaussian_field(1.0, 1.0, 0.0, 0.0), cfg.grid);
        const SampledField h = sample(make_gaussian_field(1.4, 0.8, 0.4, 0.0), cfg.grid);
        SampledField fh(cfg.grid, Domain::Position);
        for (size_t i = 0; i < fh.values.size(); ++i) fh.values[i] = f.values[i] * h.values[i];
        std::vector<double> hs, errs;
        double th = 0.4;
        for (int l = 0; l < levels; ++l, th /= 2.0) {
            hs.push_back(th);
            errs.push_back(rel_l2_diff(invariant_product(f, h, make_profile(cfg, th)), fh));
        }
        ck.add("converge-semiclassical-theta", "semiclassical-limit",
               std::max(0.0, 1.0 - fit_order(hs, errs)), 0.05, PassMode::UpperBound, t0);
    }
    {
        // grid refinement for the invariance residual
        const double t0 = now_s();
        const double theta = cfg.theta_list.front();
        const DeformationProfile prof = make_profile(cfg, theta);
        const AnalyticField f = make_gaussian_field(1.0, 1.0, 0.0, 0.0);
        const AnalyticField h = make_gaussian_field(1.4, 0.8, 0.4, 0.0);
        const auto pts = sample_points(cfg.seed + 7, 16, 0.8, 3.0);
        const GroupElement g{0.3, 0.5, -0.2};
        std::vector<double> hs, errs;
        int n = 64;
        for (int l = 0; l < levels && n <= 512; ++l, n *= 2) {
            const GridSpec grid(cfg.grid.a_half, cfg.grid.l_half, n, n);
            hs.push_back(1.0 / n);
            errs.push_back(invariance_residual(g, f, h, prof, grid, pts, false));
        }
        const double order = fit_order(hs, errs);
        // report the measured order; require decay (order > 0.5)
        ck.add("converge-invariance-grid", "product-invariance", order, 0.5, PassMode::LowerBound,
               t0);
    }
    return rep;
}

void apply_config_text(ScenarioConfig& cfg, const std::string& text, const std::string& origin) {
    std::istringstream is(text);
    std::string line, section = "global";
    int lineno = 0;
    auto fail = [&](const std::string& msg) {
        std::ostringstream os;
        os << origin << ":" << lineno << ": " << msg;
        throw std::invalid_argument(os.str());
    };
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') fail("unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            if (section != "global" &&
                std::find(kSuites.begin(), kSuites.end(), section) == kSuites.end())
                fail("unknown section '" + section + "'");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) fail("expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        try {
            if (section != "global") {
                if (key != "tolerance") fail("only 'tolerance' is valid in suite sections");
                cfg.tolerances[section] = std::stod(val);
                continue;
            }
            if (key == "grid") {
                int na, nl;
                if (std::sscanf(val.c_str(), "%dx%d", &na, &nl) != 2) fail("grid must be NxM");
                cfg.grid = GridSpec(cfg.grid.a_half, cfg.grid.l_half, na, nl);
            } else if (key == "a_window") {
                cfg.grid = GridSpec(std::stod(val), cfg.grid.l_half, cfg.grid.n_a, cfg.grid.n_l);
            } else if (key == "l_window") {
                cfg.grid = GridSpec(cfg.grid.a_half, std::stod(val), cfg.grid.n_a, cfg.grid.n_l);
            } else if (key == "theta") {
                cfg.theta_list.clear();
                std::istringstream ts(val);
                std::string tok;
                while (std::getline(ts, tok, ',')) cfg.theta_list.push_back(std::stod(tok));
            } else if (key == "profile") {
                cfg.profile = val;
            } else if (key == "suite") {
                cfg.suite = val;
            } else if (key == "seed") {
                cfg.seed = std::stoull(val);
            } else if (key == "out") {
                cfg.out_dir = val;
            } else if (key == "golden") {
                cfg.golden_path = val;
            } else {
                fail("unknown key '" + key + "'");
            }
        } catch (const std::invalid_argument& e) {
            throw;
        } catch (const std::exception& e) {
            fail(std::string("bad value: ") + e.what());
        }
    }
}

ScenarioConfig parse_config_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::invalid_argument("config: cannot open " + path);
    std::ostringstream buf;
    buf << is.rdbuf();
    ScenarioConfig cfg;
    apply_config_text(cfg, buf.str(), path);
    return cfg;
}

namespace {

nlohmann::ordered_json record_to_json(const CheckRecord& c) {
    nlohmann::ordered_json j;
    j["name"] = c.name;
    j["tag"] = c.tag;
    j["inputs_digest"] = c.inputs_digest;
    j["value"] = c.value;
    j["tolerance"] = c.tolerance;
    j["mode"] = c.mode == PassMode::UpperBound ? "max" : "min";
    j["passed"] = c.passed;
    j["runtime_s"] = c.runtime_s;
    return j;
}

}  // namespace

std::string report_to_json(const Report& r, bool with_timestamp) {
    nlohmann::ordered_json j;
    j["schema"] = "starq-report/1";
    j["kind"] = r.kind;
    j["suite"] = r.suite;
    j["profile"] = r.profile;
    j["grid"] = r.grid_str;
    j["theta"] = r.theta_list;
    j["seed"] = r.seed;
    if (with_timestamp) {
        char buf[64];
        const std::time_t t = std::time(nullptr);
        std::strftime(buf, sizeof buf, "%FT%TZ", std::gmtime(&t));
        j["timestamp"] = buf;
    }
    j["all_passed"] = r.all_passed();
    auto arr = nlohmann::ordered_json::array();
    for (const auto& c : r.checks) arr.push_back(record_to_json(c));
    j["checks"] = arr;
    return j.dump(2) + "\n";
}

std::string report_to_csv(const Report& r) {
    std::ostringstream os;
    os << "name,tag,inputs_digest,value,tolerance,mode,passed,runtime_s\n";
    char buf[256];
    for (const auto& c : r.checks) {
        std::snprintf(buf, sizeof buf, "%s,%s,%s,%.17g,%.17g,%s,%d,%.6f\n", c.name.c_str(),
                      c.tag.c_str(), c.inputs_digest.c_str(), c.value, c.tolerance,
                      c.mode == PassMode::UpperBound ? "max" : "min", c.passed ? 1 : 0,
                      c.runtime_s);
        os << buf;
    }
    return os.str();
}

void write_report_files(const Report& r, const std::string& out_dir) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    {
        std::ofstream os(fs::path(out_dir) / "report.json");
        os << report_to_json(r);
    }
    {
        std::ofstream os(fs::path(out_dir) / "report.csv");
        os << report_to_csv(r);
    }
}

GoldenCompare compare_golden(const Report& r, const std::string& golden_path, double rel_tol) {
    GoldenCompare out;
    std::ifstream is(golden_path);
    if (!is) {
        out.ok = false;
        out.mismatches.push_back("cannot open golden report " + golden_path);
        return out;
    }
    nlohmann::json g;
    is >> g;
    std::map<std::string, nlohmann::json> by_name;
    for (const auto& c : g.at("checks")) by_name[c.at("name")] = c;
    for (const auto& c : r.checks) {
        auto it = by_name.find(c.name);
        if (it == by_name.end()) {
            out.ok = false;
            out.mismatches.push_back("missing in golden: " + c.name);
            continue;
        }
        const double gv = it->second.at("value").get<double>();
        const bool gp = it->second.at("passed").get<bool>();
        if (std::abs(c.value - gv) > std::max(1e-12, rel_tol * std::abs(gv))) {
            std::ostringstream os;
            os << c.name << ": value " << c.value << " vs golden " << gv;
            out.ok = false;
            out.mismatches.push_back(os.str());
        }
        if (c.passed != gp) {
            out.ok = false;
            out.mismatches.push_back(c.name + ": pass flag differs");
        }
    }
    if (r.checks.size() != by_name.size()) {
        out.ok = false;
        out.mismatches.push_back("record count differs from golden");
    }
    return out;
}

AnalyticField make_gaussian_field(double a_scale, double l_scale, double l_center,
                                  double l_modulation) {
    return AnalyticField::from_jet([=](OrbitPoint p) {
        const double r = std::sinh(2.0 * p.a);
        const double u = -a_scale * r * r;
        const double ua = -a_scale * 2.0 * r * 2.0 * std::cosh(2.0 * p.a);
        const double uaa = -a_scale * (8.0 * std::cosh(2.0 * p.a) * std::cosh(2.0 * p.a) + 8.0 * r * r);
        const double dl = p.l - l_center;
        const cplx v = cplx(-l_scale * dl * dl, l_modulation * p.l);
        const cplx vl = cplx(-2.0 * l_scale * dl, l_modulation);
        const cplx vll = cplx(-2.0 * l_scale, 0.0);
        const cplx g = std::exp(u + v);
        Jet2 j;
        j.f = g;
        j.fa = ua * g;
        j.fl = vl * g;
        j.faa = (uaa + ua * ua) * g;
        j.fal = ua * vl * g;
        j.fll = (vll + vl * vl) * g;
        return j;
    });
}

std::vector<AnalyticField> standard_panel() {
    return {make_gaussian_field(1.0, 1.0, 0.0, 0.0), make_gaussian_field(0.7, 0.7, 0.5, 0.0),
            make_gaussian_field(1.2, 0.8, -0.6, 0.5), make_gaussian_field(0.8, 1.2, 0.3, -0.4),
            make_gaussian_field(0.7, 0.6, 0.0, 0.0)};
}

}  // namespace starq
