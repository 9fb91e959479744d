#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "starq/numeric.hpp"
#include "starq/orbit.hpp"

namespace starq {

// Uniform rectangular grid on [-a_half, a_half) x [-l_half, l_half).
// Node counts are powers of two so rows transform with the radix-2 FFT.
struct GridSpec {
    double a_half = 3.0;
    double l_half = 12.0;
    int n_a = 256;
    int n_l = 256;

    GridSpec() = default;
    GridSpec(double ah, double lh, int na, int nl);

    double da() const { return 2.0 * a_half / n_a; }
    double dl() const { return 2.0 * l_half / n_l; }
    double a(int i) const { return -a_half + da() * i; }
    double l(int j) const { return -l_half + dl() * j; }
    // Frequency grid for the second axis: uniform on [-nyquist, nyquist).
    double nyquist() const { return M_PI / dl(); }
    double dxi() const { return 2.0 * nyquist() / n_l; }
    double xi(int k) const { return -nyquist() + dxi() * k; }

    bool operator==(const GridSpec&) const = default;
};

enum class Domain { Position, Frequency };

// Complex samples over a GridSpec, row-major with the a-index outer.
// The domain tag records whether the second axis is l or its dual.
struct SampledField {
    GridSpec grid;
    Domain domain = Domain::Position;
    std::vector<cplx> values;

    SampledField() = default;
    SampledField(const GridSpec& g, Domain d)
        : grid(g), domain(d), values(static_cast<size_t>(g.n_a) * g.n_l) {}

    cplx& at(int i, int j) { return values[static_cast<size_t>(i) * grid.n_l + j]; }
    const cplx& at(int i, int j) const { return values[static_cast<size_t>(i) * grid.n_l + j]; }
    std::span<cplx> row(int i) { return {values.data() + static_cast<size_t>(i) * grid.n_l, static_cast<size_t>(grid.n_l)}; }
    std::span<const cplx> row(int i) const { return {values.data() + static_cast<size_t>(i) * grid.n_l, static_cast<size_t>(grid.n_l)}; }

    double l2_norm() const;
};

double rel_l2_diff(const SampledField& f, const SampledField& h);

// Pointwise evaluation on the grid nodes. Throws on a non-finite sample.
SampledField sample(const AnalyticField& f, const GridSpec& grid);

// Row-wise semi-discrete transform fhat(a, xi) = int dl e^{-i xi l} f(a, l)
// (trapezoid weights, frequency output on the uniform xi grid).
SampledField partial_fourier(const SampledField& f);

// Inverse convention (1/2pi) int dxi e^{+i xi l}.
SampledField inverse_partial_fourier(const SampledField& f);

// Direct evaluation of the row transform at one arbitrary frequency;
// `lw` supplies per-column weights (taper), empty means plain trapezoid.
cplx nudft_row(const SampledField& f, int row, double xi, std::span<const double> lw = {});

// Multi-index (k, p, q, n) of the weighted sup seminorm
//   sup | sinh(2a)^k cosh(2a)^{-p} l^q  d_a^p d_l^n f |.
struct SeminormIndex {
    int k = 0, p = 0, q = 0, n = 0;
};

// Discrete sup over interior nodes; derivatives by iterated 4th-order
// central differences, stencil-invalid margins excluded.
double schwartz_seminorm(const SampledField& f, const SeminormIndex& idx);

// Lagrange-8 interpolation of all rows shifted by `shift` along a
// (result row i approximates f at a_i + shift); zero outside the window.
SampledField shift_rows(const SampledField& f, double shift);

// Interpolate the field at an arbitrary point (2-D Lagrange-8).
cplx interp_at(const SampledField& f, OrbitPoint p);

// CSV dump format: two metadata header lines, then "a,l,re,im" per node
// with round-trip-exact doubles.
void write_field_csv(std::ostream& os, const SampledField& f);
SampledField read_field_csv(std::istream& is);
void write_field_csv_file(const std::string& path, const SampledField& f);
SampledField read_field_csv_file(const std::string& path);

}  // namespace starq
