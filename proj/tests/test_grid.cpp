#include <doctest.h>

#include <cmath>
#include <sstream>

#include "starq/fft.hpp"
#include "starq/grid.hpp"
#include "starq/scenario.hpp"

using namespace starq;

namespace {

const GridSpec kGrid(3.0, 12.0, 128, 128);

}  // namespace

TEST_CASE("grid invariants") {
    CHECK_THROWS_AS(GridSpec(3.0, 12.0, 100, 128), std::invalid_argument);
    CHECK_THROWS_AS(GridSpec(-1.0, 12.0, 128, 128), std::invalid_argument);
    const GridSpec g(2.0, 8.0, 64, 128);
    CHECK(g.dl() == doctest::Approx(2.0 * 8.0 / 128));
    CHECK(g.nyquist() == doctest::Approx(M_PI / g.dl()));
}

TEST_CASE("sampling basics and error signalling") {
    const SampledField z = sample(AnalyticField([](OrbitPoint) { return cplx(0.0); }), kGrid);
    for (const auto& v : z.values) CHECK(v == cplx(0.0));
    const SampledField one = sample(AnalyticField([](OrbitPoint) { return cplx(1.0); }), kGrid);
    for (const auto& v : one.values) CHECK(v == cplx(1.0));

    // symmetric gaussian is symmetric under (a,l) -> (-a,-l) on the open grid
    const SampledField gs = sample(make_gaussian_field(1.0, 1.0, 0.0, 0.0), kGrid);
    for (int i = 1; i < kGrid.n_a; ++i)
        for (int j = 1; j < kGrid.n_l; j += 7)
            CHECK(std::abs(gs.at(i, j) - gs.at(kGrid.n_a - i, kGrid.n_l - j)) < 1e-15);

    const AnalyticField bad([](OrbitPoint p) {
        return p.a > 2.9 ? cplx(std::nan("")) : cplx(1.0);
    });
    CHECK_THROWS_WITH_AS(sample(bad, kGrid), doctest::Contains("non-finite value at node"),
                         std::runtime_error);
}

TEST_CASE("partial fourier matches the closed-form gaussian pair") {
    // rows g(a) e^{-l^2/2} -> g(a) sqrt(2 pi) e^{-xi^2/2}
    const AnalyticField f([](OrbitPoint p) {
        return cplx(std::exp(-std::sinh(2 * p.a) * std::sinh(2 * p.a)) * std::exp(-p.l * p.l / 2));
    });
    const SampledField s = sample(f, kGrid);
    const SampledField sh = partial_fourier(s);
    double worst = 0.0;
    for (int i = 0; i < kGrid.n_a; i += 5) {
        const double ga = std::exp(-std::pow(std::sinh(2 * kGrid.a(i)), 2));
        for (int k = 0; k < kGrid.n_l; k += 3) {
            const double want = ga * std::sqrt(2.0 * M_PI) * std::exp(-kGrid.xi(k) * kGrid.xi(k) / 2);
            worst = std::max(worst, std::abs(sh.at(i, k) - want));
        }
    }
    CHECK(worst < 1e-12);

    // real and even rows give a real spectrum
    for (int k = 0; k < kGrid.n_l; k += 3) CHECK(std::abs(sh.at(10, k).imag()) < 1e-13);
}

TEST_CASE("transform roundtrip and plancherel") {
    const SampledField s = sample(make_gaussian_field(1.0, 1.0, 0.4, 0.7), kGrid);
    const SampledField rt = inverse_partial_fourier(partial_fourier(s));
    CHECK(rel_l2_diff(rt, s) < 1e-13);

    const SampledField sh = partial_fourier(s);
    double pos = 0.0, freq = 0.0;
    for (const auto& v : s.values) pos += std::norm(v);
    for (const auto& v : sh.values) freq += std::norm(v);
    pos *= kGrid.da() * kGrid.dl();
    freq *= kGrid.da() * kGrid.dxi() / (2.0 * M_PI);
    CHECK(pos == doctest::Approx(freq).epsilon(1e-10));

    CHECK_THROWS_AS(partial_fourier(sh), std::invalid_argument);
    CHECK_THROWS_AS(inverse_partial_fourier(s), std::invalid_argument);
}

TEST_CASE("nudft agrees with the fft on grid frequencies") {
    const SampledField s = sample(make_gaussian_field(1.0, 1.0, 0.0, 0.5), kGrid);
    const SampledField sh = partial_fourier(s);
    for (int k = 3; k < kGrid.n_l; k += 17)
        CHECK(std::abs(nudft_row(s, 20, kGrid.xi(k)) - sh.at(20, k)) < 1e-12);
}

TEST_CASE("schwartz seminorms") {
    const SampledField g = sample(make_gaussian_field(1.0, 1.0, 0.0, 0.0), kGrid);
    // (0,0,0,0): sup |f| = 1 at the origin
    CHECK(schwartz_seminorm(g, {0, 0, 0, 0}) == doctest::Approx(1.0).epsilon(1e-12));

    // homogeneity
    SampledField g3 = g;
    for (auto& v : g3.values) v *= cplx(0.0, -3.0);
    CHECK(schwartz_seminorm(g3, {1, 1, 1, 1}) ==
          doctest::Approx(3.0 * schwartz_seminorm(g, {1, 1, 1, 1})).epsilon(1e-12));

    // sup monotone under window growth
    const GridSpec small(2.0, 8.0, 128, 128), large(3.0, 12.0, 256, 256);
    const auto f = make_gaussian_field(1.0, 1.0, 0.0, 0.0);
    CHECK(schwartz_seminorm(sample(f, small), {1, 0, 2, 0}) <=
          schwartz_seminorm(sample(f, large), {1, 0, 2, 0}) * (1.0 + 1e-9));

    // no a-decay: the k=1 weight diverges with the window
    const AnalyticField flat([](OrbitPoint p) { return cplx(std::exp(-p.l * p.l)); });
    const double s3 = schwartz_seminorm(sample(flat, GridSpec(3.0, 8.0, 128, 128)), {1, 0, 0, 0});
    const double s5 = schwartz_seminorm(sample(flat, GridSpec(5.0, 8.0, 128, 128)), {1, 0, 0, 0});
    CHECK(s5 > 10.0 * s3);

    // membership scan: all seminorms with k+p+q+n <= 4 stay bounded for the
    // reference gaussian family under window growth
    for (const auto idx : {SeminormIndex{2, 1, 1, 0}, SeminormIndex{1, 2, 0, 1},
                           SeminormIndex{0, 2, 2, 0}, SeminormIndex{1, 1, 1, 1}}) {
        const double a3 = schwartz_seminorm(sample(f, GridSpec(3.0, 12.0, 256, 256)), idx);
        const double a4 = schwartz_seminorm(sample(f, GridSpec(4.0, 12.0, 512, 256)), idx);
        CHECK(a4 < a3 * 1.05 + 1e-9);
    }

    CHECK_THROWS_AS(schwartz_seminorm(sample(f, GridSpec(1.0, 1.0, 8, 8)), {0, 3, 0, 0}),
                    std::invalid_argument);
}

TEST_CASE("pullback stability of the schwartz window scan") {
    const auto f = make_gaussian_field(1.0, 1.0, 0.0, 0.0);
    const GroupElement g{0.8, -1.2, 0.9};  // |g| <= 2 in every coordinate
    const auto pf = pullback(g, f);
    for (const auto idx : {SeminormIndex{1, 0, 1, 0}, SeminormIndex{0, 1, 0, 1}}) {
        const double a3 = schwartz_seminorm(sample(pf, GridSpec(3.0, 16.0, 256, 256)), idx);
        const double a4 = schwartz_seminorm(sample(pf, GridSpec(4.0, 16.0, 512, 256)), idx);
        CHECK(a4 < a3 * 1.05 + 1e-9);
    }
}

TEST_CASE("row shifting and interpolation") {
    const auto f = make_gaussian_field(1.0, 1.0, 0.2, 0.4);
    const SampledField s = sample(f, kGrid);
    const double shift = 0.37;
    const SampledField sh = shift_rows(s, shift);
    double worst = 0.0;
    for (int i = 20; i < kGrid.n_a - 20; i += 3)
        for (int j = 0; j < kGrid.n_l; j += 5)
            worst = std::max(worst, std::abs(sh.at(i, j) - f({kGrid.a(i) + shift, kGrid.l(j)})));
    CHECK(worst < 1e-6);

    const OrbitPoint p{0.213, -1.077};
    CHECK(std::abs(interp_at(s, p) - f(p)) < 2e-6);
}

TEST_CASE("csv dump round-trips bit-exactly") {
    const SampledField s = sample(make_gaussian_field(1.0, 1.0, 0.3, 1.1), GridSpec(2.0, 6.0, 16, 32));
    std::stringstream ss;
    write_field_csv(ss, s);
    const SampledField r = read_field_csv(ss);
    REQUIRE(r.grid == s.grid);
    REQUIRE(r.domain == s.domain);
    for (size_t i = 0; i < s.values.size(); ++i) {
        CHECK(r.values[i].real() == s.values[i].real());
        CHECK(r.values[i].imag() == s.values[i].imag());
    }
}

TEST_CASE("fft basics") {
    std::vector<cplx> v(8);
    for (size_t i = 0; i < v.size(); ++i) v[i] = cplx(std::cos(0.3 * i), std::sin(0.1 * i));
    auto w = v;
    fft_inplace(w);
    ifft_inplace(w);
    for (size_t i = 0; i < v.size(); ++i) CHECK(std::abs(w[i] - v[i]) < 1e-14);
    std::vector<cplx> odd(6);
    CHECK_THROWS_AS(fft_inplace(odd), std::invalid_argument);
}
