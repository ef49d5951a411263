#pragma once

#include <span>

namespace rds {

/// Thomas algorithm for a tridiagonal system.
///
/// Row i reads lower[i]*x[i-1] + diag[i]*x[i] + upper[i]*x[i+1] = rhs[i];
/// lower[0] and upper[n-1] are ignored. `rhs` is overwritten with the
/// solution. `scratch` must hold at least n values. No pivoting: the matrix
/// is expected to be diagonally dominant (true for every implicit diffusion
/// matrix built in this library).
void solve_tridiagonal(std::span<const double> lower, std::span<const double> diag,
                       std::span<const double> upper, std::span<double> rhs,
                       std::span<double> scratch);

}  // namespace rds
