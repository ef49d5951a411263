#include "rds/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "rds/errors.hpp"
#include "rds/norms.hpp"
#include "rds/tridiagonal.hpp"

namespace rds {

std::string_view to_string(Boundary bc) {
  return bc == Boundary::Neumann ? "neumann" : "dirichlet";
}

Grid::Grid(int dimension, int cells_per_axis, double length, Boundary bc)
    : dimension_(dimension), cells_(cells_per_axis), length_(length), bc_(bc) {
  if (dimension != 1 && dimension != 2) {
    throw ContractError("Grid: dimension must be 1 or 2, got " + std::to_string(dimension));
  }
  if (cells_per_axis < 3) {
    throw ContractError("Grid: need at least 3 cells per axis, got " +
                        std::to_string(cells_per_axis));
  }
  if (!(length > 0.0) || !std::isfinite(length)) {
    throw ContractError("Grid: length must be positive and finite");
  }
}

std::size_t Grid::cell_count() const noexcept {
  const auto n = static_cast<std::size_t>(cells_);
  return dimension_ == 1 ? n : n * n;
}

double Grid::cell_measure() const noexcept { return std::pow(spacing(), dimension_); }

double Grid::volume() const noexcept { return std::pow(length_, dimension_); }

void Grid::check(std::span<const double> f) const {
  if (f.size() != cell_count()) {
    throw ContractError("field has " + std::to_string(f.size()) + " values, grid has " +
                        std::to_string(cell_count()) + " cells");
  }
}

namespace {

// Second difference along one line of `n` values separated by `stride`.
void accumulate_line_laplacian(std::span<const double> f, std::span<double> out,
                               std::size_t offset, std::size_t stride, int n, Boundary bc,
                               double scale) {
  for (int i = 0; i < n; ++i) {
    const double c = f[offset + i * stride];
    double left;
    double right;
    if (i > 0) {
      left = f[offset + (i - 1) * stride];
    } else {
      left = bc == Boundary::Neumann ? c : 0.0;
    }
    if (i + 1 < n) {
      right = f[offset + (i + 1) * stride];
    } else {
      right = bc == Boundary::Neumann ? c : 0.0;
    }
    out[offset + i * stride] += scale * ((left - c) + (right - c));
  }
}

// Backward-Euler matrix I - r*D2 along one axis, in place on a strided line.
class LineSolver {
 public:
  LineSolver(int n, double r, Boundary bc)
      : lower_(n, -r), diag_(n, 1.0 + 2.0 * r), upper_(n, -r), line_(n), scratch_(n) {
    if (bc == Boundary::Neumann) {
      diag_.front() = 1.0 + r;
      diag_.back() = 1.0 + r;
    }
  }

  void solve(std::span<double> f, std::size_t offset, std::size_t stride) {
    const std::size_t n = line_.size();
    for (std::size_t i = 0; i < n; ++i) line_[i] = f[offset + i * stride];
    solve_tridiagonal(lower_, diag_, upper_, line_, scratch_);
    for (std::size_t i = 0; i < n; ++i) f[offset + i * stride] = line_[i];
  }

 private:
  std::vector<double> lower_, diag_, upper_, line_, scratch_;
};

}  // namespace

ScalarField laplacian_apply(std::span<const double> f, const Grid& g, double d) {
  g.check(f);
  const int n = g.cells_per_axis();
  const double h = g.spacing();
  const double scale = d / (h * h);
  ScalarField out(f.size(), 0.0);
  if (g.dimension() == 1) {
    accumulate_line_laplacian(f, out, 0, 1, n, g.bc(), scale);
    return out;
  }
  const auto un = static_cast<std::size_t>(n);
  for (std::size_t j = 0; j < un; ++j) {
    accumulate_line_laplacian(f, out, j * un, 1, n, g.bc(), scale);
  }
  for (std::size_t i = 0; i < un; ++i) {
    accumulate_line_laplacian(f, out, i, un, n, g.bc(), scale);
  }
  return out;
}

ScalarField heat_step_implicit(std::span<const double> f, const Grid& g, double d, double dt) {
  g.check(f);
  if (!(dt > 0.0)) throw ContractError("heat_step_implicit: dt must be positive");
  if (!(d > 0.0)) throw ContractError("heat_step_implicit: diffusion must be positive");
  // constants are an exact fixed point of the Neumann operator
  if (g.bc() == Boundary::Neumann &&
      std::all_of(f.begin(), f.end(), [&](double x) { return x == f.front(); })) {
    return ScalarField(f.begin(), f.end());
  }
  const int n = g.cells_per_axis();
  const double h = g.spacing();
  LineSolver solver(n, dt * d / (h * h), g.bc());
  ScalarField out(f.begin(), f.end());
  if (g.dimension() == 1) {
    solver.solve(out, 0, 1);
    return out;
  }
  const auto un = static_cast<std::size_t>(n);
  for (std::size_t j = 0; j < un; ++j) solver.solve(out, j * un, 1);
  for (std::size_t i = 0; i < un; ++i) solver.solve(out, i, un);
  return out;
}

ScalarField heat_semigroup(std::span<const double> f, const Grid& g, double d, double t,
                           int substeps) {
  if (!(t > 0.0)) throw ContractError("heat_semigroup: t must be positive");
  if (substeps < 1) throw ContractError("heat_semigroup: substeps must be positive");
  const double dt = t / substeps;
  ScalarField out(f.begin(), f.end());
  for (int k = 0; k < substeps; ++k) out = heat_step_implicit(out, g, d, dt);
  return out;
}

double smoothing_ratio(std::span<const double> Y, const Grid& g, double d, double t, double p,
                       double q, int substeps) {
  if (p < 1.0 || q < p) throw ContractError("smoothing_ratio: need 1 <= p <= q");
  const double y_norm = norm_p(Y, g, p);
  if (!(y_norm > 0.0)) throw DivisionDomainError("smoothing_ratio: Y is identically zero");

  const ScalarField smoothed = heat_semigroup(Y, g, d, t, substeps);
  const double inv_q = std::isinf(q) ? 0.0 : 1.0 / q;
  const double exponent = -0.5 * g.dimension() * (1.0 / p - inv_q);
  const double base = g.bc() == Boundary::Neumann ? std::min(1.0, t)
                                                  : 4.0 * std::numbers::pi * t;
  return norm_p(smoothed, g, q) / (std::pow(base, exponent) * y_norm);
}

}  // namespace rds
