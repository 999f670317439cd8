#pragma once

#include <cstddef>
#include <cstdint>

namespace kamlab {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double length() const { return hi - lo; }
  double center() const { return 0.5 * (lo + hi); }
  bool contains(double x) const { return lo <= x && x <= hi; }
  bool contains(const Interval& other) const { return lo <= other.lo && other.hi <= hi; }
};

// Uniform lattice of nodes origin + k * step for integer k in [k_begin, k_end].
// Grids sharing origin and step agree bitwise on common nodes, so sub-windows
// taken from a larger grid index the same doubles.
class Grid {
 public:
  Grid() = default;
  // Nodes covering `window`; throws ParameterError unless step > 0 and the
  // window holds at least two steps.
  Grid(Interval window, double step, double origin = 0.0);

  // Grid with nodes 0, h, ..., (N-1) h on [0, 1) where N = round(1 / h).
  static Grid torus(double step);

  std::size_t size() const { return count_; }
  double step() const { return step_; }
  double origin() const { return origin_; }
  std::int64_t first_index() const { return k_begin_; }
  double node(std::size_t i) const {
    return origin_ + static_cast<double>(k_begin_ + static_cast<std::int64_t>(i)) * step_;
  }
  double lo() const { return node(0); }
  double hi() const { return node(count_ - 1); }
  Interval window() const { return {lo(), hi()}; }

  // Index of the node nearest to x; RangeError if x is more than half a step
  // outside the grid.
  std::size_t snap(double x) const;
  // Index of the node exactly at x (within 1e-9 step); RangeError otherwise.
  std::size_t index_of(double x) const;
  bool same_lattice(const Grid& other) const;
  // Nodes of this grid lying in `window`.
  Grid restrict(Interval window) const;

 private:
  double origin_ = 0.0;
  double step_ = 1.0;
  std::int64_t k_begin_ = 0;
  std::size_t count_ = 0;
};

}  // namespace kamlab
