#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace rds {

enum class Boundary { Neumann, Dirichlet };

std::string_view to_string(Boundary bc);

/// Cell values on a Grid, row-major with the x index fastest.
using ScalarField = std::vector<double>;

/// Uniform cell-centered discretization of the box (0, L)^N, N in {1, 2}.
///
/// The spacing is always derived as length / cells_per_axis.
class Grid {
 public:
  Grid(int dimension, int cells_per_axis, double length, Boundary bc);

  int dimension() const noexcept { return dimension_; }
  int cells_per_axis() const noexcept { return cells_; }
  double length() const noexcept { return length_; }
  double spacing() const noexcept { return length_ / cells_; }
  Boundary bc() const noexcept { return bc_; }

  std::size_t cell_count() const noexcept;
  /// h^N, the quadrature weight of a single cell.
  double cell_measure() const noexcept;
  /// |Omega| = L^N.
  double volume() const noexcept;
  /// Center coordinate of cell index i along one axis.
  double center(int i) const noexcept { return (i + 0.5) * spacing(); }

  /// Same box and boundary condition with a different resolution.
  Grid refined(int cells_per_axis) const { return Grid(dimension_, cells_per_axis, length_, bc_); }

  /// Throws ContractError unless `f` has one value per cell.
  void check(std::span<const double> f) const;

 private:
  int dimension_;
  int cells_;
  double length_;
  Boundary bc_;
};

/// d * Laplacian_h f with the second-order central stencil. Neumann walls use
/// mirror ghost cells, Dirichlet walls use zero ghost values.
ScalarField laplacian_apply(std::span<const double> f, const Grid& g, double d);

/// One backward-Euler diffusion step: solves (I - dt*d*Laplacian_h) out = f.
/// In 2D the operator is split into an x sweep followed by a y sweep.
ScalarField heat_step_implicit(std::span<const double> f, const Grid& g, double d, double dt);

/// Approximates S_d(t) f by `substeps` backward-Euler steps of size t/substeps.
ScalarField heat_semigroup(std::span<const double> f, const Grid& g, double d, double t,
                           int substeps);

/// Number of sub-steps used by smoothing_ratio when none is given.
inline constexpr int kDefaultSemigroupSubsteps = 400;

/// Ratio of ||S_d(t) Y||_q to the Lp -> Lq smoothing bound.
///
/// Neumann: bound = m(t)^{-(N/2)(1/p-1/q)} ||Y||_p with m(t) = min(1, t).
/// Dirichlet: bound = (4 pi t)^{-(N/2)(1/p-1/q)} ||Y||_p.
/// Pass q = infinity for the sup norm. Throws DivisionDomainError when Y = 0.
double smoothing_ratio(std::span<const double> Y, const Grid& g, double d, double t, double p,
                       double q, int substeps = kDefaultSemigroupSubsteps);

}  // namespace rds
