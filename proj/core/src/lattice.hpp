#pragma once

// Grid-restricted edge weights shared by the dynamic programs.

#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "kamlab/grid.hpp"
#include "kamlab/model.hpp"

namespace kamlab::detail {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Nodes of a window grid with K V(x) cached per node. weight(i, j) is bitwise
// equal to model.energy(node(i), node(j)).
class WindowLattice {
 public:
  WindowLattice(const InteractionModel& m, const Grid& g, double radius) : grid_(g), lambda_(m.lambda()) {
    x_.resize(g.size());
    kv_.resize(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
      x_[i] = g.node(i);
      kv_[i] = m.coupling() * m.potential(x_[i]);
    }
    set_radius(radius);
  }

  void set_radius(double radius) {
    radius_ = radius;
    const double steps = std::ceil(radius / grid_.step() - 1e-9);
    span_ = static_cast<std::size_t>(std::max(1.0, std::min(steps, static_cast<double>(grid_.size()))));
  }

  std::size_t size() const { return x_.size(); }
  std::size_t span() const { return span_; }
  double radius() const { return radius_; }
  double x(std::size_t i) const { return x_[i]; }
  const Grid& grid() const { return grid_; }
  double weight(std::size_t i, std::size_t j) const {
    const double d = x_[j] - x_[i] - lambda_;
    return 0.5 * d * d + kv_[i];
  }
  std::size_t lo(std::size_t j) const { return j >= span_ ? j - span_ : 0; }
  std::size_t hi(std::size_t j) const { return std::min(x_.size() - 1, j + span_); }

  // out[j] = min_i (u[i] + w(i, j)) - shift over |i - j| <= span, for j in
  // [jb, je). Smallest i wins ties.
  void relax(const double* u, double shift, std::size_t jb, std::size_t je, double* out, std::size_t* arg) const {
    const auto b = static_cast<std::ptrdiff_t>(jb);
    const auto e = static_cast<std::ptrdiff_t>(je);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (std::ptrdiff_t jj = b; jj < e; ++jj) {
      const auto j = static_cast<std::size_t>(jj);
      double best = kInf;
      std::size_t at = j;
      const std::size_t i1 = hi(j);
      for (std::size_t i = lo(j); i <= i1; ++i) {
        const double v = u[i] + weight(i, j);
        if (v < best) {
          best = v;
          at = i;
        }
      }
      out[j] = best - shift;
      if (arg) arg[j] = at;
    }
  }

 private:
  Grid grid_;
  double lambda_;
  double radius_ = 0.0;
  std::size_t span_ = 1;
  std::vector<double> x_;
  std::vector<double> kv_;
};

// Dense weights E^per(i h, j h) on the circle of N = 1/h nodes, stored by
// target column.
class TorusLattice {
 public:
  TorusLattice(const InteractionModel& m, double step) : grid_(Grid::torus(step)) {
    n_ = grid_.size();
    w_.resize(n_ * n_);
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) w_[j * n_ + i] = m.energy_periodic(grid_.node(i), grid_.node(j));
    }
  }

  std::size_t size() const { return n_; }
  const Grid& grid() const { return grid_; }
  double weight(std::size_t i, std::size_t j) const { return w_[j * n_ + i]; }

  void relax(const double* u, double* out) const {
    const auto n = static_cast<std::ptrdiff_t>(n_);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (std::ptrdiff_t jj = 0; jj < n; ++jj) {
      const auto j = static_cast<std::size_t>(jj);
      const double* col = &w_[j * n_];
      double best = kInf;
      for (std::size_t i = 0; i < n_; ++i) best = std::min(best, u[i] + col[i]);
      out[j] = best;
    }
  }

 private:
  Grid grid_;
  std::size_t n_ = 0;
  std::vector<double> w_;
};

}  // namespace kamlab::detail
