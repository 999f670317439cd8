#include "kamlab/grid.hpp"

#include <cmath>
#include <string>

#include "kamlab/error.hpp"

namespace kamlab {

namespace {
constexpr double kSnapSlack = 1e-9;
}

Grid::Grid(Interval window, double step, double origin) : origin_(origin), step_(step) {
  if (!(step > 0.0) || !std::isfinite(step)) {
    throw ParameterError("grid step must be positive and finite, got " + std::to_string(step));
  }
  if (!std::isfinite(window.lo) || !std::isfinite(window.hi) || !(window.hi - window.lo >= 2.0 * step)) {
    throw ParameterError("grid window must span at least two steps");
  }
  const auto k_lo = static_cast<std::int64_t>(std::ceil((window.lo - origin) / step - kSnapSlack));
  const auto k_hi = static_cast<std::int64_t>(std::floor((window.hi - origin) / step + kSnapSlack));
  k_begin_ = k_lo;
  count_ = static_cast<std::size_t>(k_hi - k_lo + 1);
}

Grid Grid::torus(double step) {
  if (!(step > 0.0) || step > 0.5) {
    throw ParameterError("torus step must lie in (0, 1/2]");
  }
  const double n = std::round(1.0 / step);
  if (std::abs(n * step - 1.0) > 1e-12) {
    throw ConfigurationError("torus step must divide 1 exactly, got " + std::to_string(step));
  }
  Grid g;
  g.origin_ = 0.0;
  g.step_ = step;
  g.k_begin_ = 0;
  g.count_ = static_cast<std::size_t>(n);
  return g;
}

std::size_t Grid::snap(double x) const {
  const double t = (x - origin_) / step_ - static_cast<double>(k_begin_);
  const double r = std::round(t);
  if (!(r >= 0.0) || r > static_cast<double>(count_ - 1)) {
    throw RangeError("point " + std::to_string(x) + " lies outside grid [" + std::to_string(lo()) + ", " +
                     std::to_string(hi()) + "]");
  }
  return static_cast<std::size_t>(r);
}

std::size_t Grid::index_of(double x) const {
  const std::size_t i = snap(x);
  if (std::abs(node(i) - x) > kSnapSlack * step_ + 1e-15 * std::abs(x)) {
    throw RangeError("point " + std::to_string(x) + " is not a grid node");
  }
  return i;
}

bool Grid::same_lattice(const Grid& other) const {
  return step_ == other.step_ && origin_ == other.origin_;
}

Grid Grid::restrict(Interval window) const {
  Grid g(window, step_, origin_);
  if (g.k_begin_ < k_begin_ || g.k_begin_ + static_cast<std::int64_t>(g.count_) >
                                   k_begin_ + static_cast<std::int64_t>(count_)) {
    throw RangeError("restriction window leaves the grid");
  }
  return g;
}

}  // namespace kamlab
