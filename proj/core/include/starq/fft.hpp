#pragma once

#include <span>

#include "starq/numeric.hpp"

namespace starq {

// In-place radix-2 transforms; length must be a power of two.
// Forward: X_k = sum_j x_j e^{-2pi i jk/n}.  Inverse includes the 1/n factor.
void fft_inplace(std::span<cplx> data);
void ifft_inplace(std::span<cplx> data);

bool is_pow2(int n);

}  // namespace starq
