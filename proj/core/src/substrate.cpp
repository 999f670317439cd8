#include "kamlab/substrate.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kamlab/error.hpp"

namespace kamlab {

void SubstrateSpec::validate() const {
  if (!(alpha > 0.0 && alpha < 0.5)) {
    throw ParameterError("substrate alpha must lie in (0, 1/2), got " + std::to_string(alpha));
  }
  if (!(rho > 0.0) || !std::isfinite(rho)) {
    throw ParameterError("substrate rho must be positive, got " + std::to_string(rho));
  }
}

std::int64_t floor_product(std::int64_t k, double alpha) {
  const double kd = static_cast<double>(k);
  const double p = kd * alpha;
  const double e = std::fma(kd, alpha, -p);  // k*alpha - p, exact
  const double f = std::floor(p);
  if (f == p && e < 0.0) return static_cast<std::int64_t>(f) - 1;
  return static_cast<std::int64_t>(f);
}

Substrate Substrate::generate(const SubstrateSpec& spec, std::int64_t k_min, std::int64_t k_max) {
  spec.validate();
  if (!(k_min < k_max)) throw ParameterError("substrate range needs k_min < k_max");
  Substrate s;
  s.spec_ = spec;
  s.k_min_ = k_min;
  s.k_max_ = k_max;
  const auto n = static_cast<std::size_t>(k_max - k_min + 1);
  s.points_.resize(n);
  s.word_.resize(n);
  std::int64_t prev = floor_product(k_min - 1, spec.alpha);
  for (std::size_t i = 0; i < n; ++i) {
    const std::int64_t k = k_min + static_cast<std::int64_t>(i);
    const std::int64_t f = floor_product(k, spec.alpha);
    s.points_[i] = static_cast<double>(k) + (spec.rho - 1.0) * static_cast<double>(f);
    s.word_[i] = static_cast<std::uint8_t>(f - prev);
    prev = f;
  }
  return s;
}

double Substrate::point(std::int64_t k) const {
  if (k < k_min_ || k > k_max_) throw RangeError("substrate index " + std::to_string(k) + " outside range");
  return points_[static_cast<std::size_t>(k - k_min_)];
}

int Substrate::letter(std::int64_t k) const {
  if (k < k_min_ || k > k_max_) throw RangeError("substrate index " + std::to_string(k) + " outside range");
  return word_[static_cast<std::size_t>(k - k_min_)];
}

std::size_t Substrate::index_of_point(double x) const {
  if (!(x >= points_.front()) || !(x < points_.back())) {
    throw RangeError("x = " + std::to_string(x) + " outside substrate range [" + std::to_string(points_.front()) +
                     ", " + std::to_string(points_.back()) + ")");
  }
  const auto it = std::upper_bound(points_.begin(), points_.end(), x);
  return static_cast<std::size_t>(it - points_.begin()) - 1;
}

Cell Substrate::cell_at(double x) const {
  const std::size_t i = index_of_point(x);
  Cell c;
  c.k = k_min_ + static_cast<std::int64_t>(i);
  c.type = word_[i + 1] == 1 ? CellType::rho : CellType::unit;
  c.offset = x - points_[i];
  c.length = c.type == CellType::rho ? spec_.rho : 1.0;
  return c;
}

double Substrate::subword_frequency(std::string_view b) const {
  if (b.empty()) throw ParameterError("subword must be nonempty");
  for (char ch : b) {
    if (ch != '0' && ch != '1') throw ParameterError("subword letters must be 0 or 1");
  }
  if (word_.size() < 10 * b.size()) throw ParameterError("substrate word shorter than ten subword lengths");
  std::size_t hits = 0;
  for (std::size_t i = 0; i + b.size() <= word_.size(); ++i) {
    bool match = true;
    for (std::size_t j = 0; j < b.size() && match; ++j) match = word_[i + j] == static_cast<std::uint8_t>(b[j] - '0');
    hits += match ? 1 : 0;
  }
  return static_cast<double>(hits) / static_cast<double>(word_.size());
}

std::vector<double> Substrate::return_vectors(const PatternQuery& q, Interval search, double tol) const {
  if (!(q.radius > 0.0)) throw ParameterError("pattern radius must be positive");
  const Interval pattern{q.center - q.radius, q.center + q.radius};
  if (!range().contains(pattern)) throw RangeError("pattern window leaves the generated substrate range");

  const auto first = std::lower_bound(points_.begin(), points_.end(), pattern.lo);
  const auto last = std::upper_bound(points_.begin(), points_.end(), pattern.hi);
  if (first == last) throw ParameterError("pattern window contains no substrate points");
  const std::vector<double> base(first, last);

  std::vector<double> out;
  for (std::size_t j = 0; j < points_.size(); ++j) {
    const double t = points_[j] - base.front();
    if (t < search.lo - tol) continue;
    if (t > search.hi + tol) break;
    const Interval moved{pattern.lo + t, pattern.hi + t};
    if (!range().contains(moved)) continue;
    const auto a = std::lower_bound(points_.begin(), points_.end(), moved.lo - tol);
    const auto b = std::upper_bound(points_.begin(), points_.end(), moved.hi + tol);
    // Points within tol of the window edges may fall on either side; compare
    // only the points that are clearly inside on both copies.
    std::vector<double> shifted;
    for (auto it = a; it != b; ++it) {
      if (*it - t >= pattern.lo + tol && *it - t <= pattern.hi - tol) shifted.push_back(*it - t);
    }
    std::vector<double> reference;
    for (double p : base) {
      if (p >= pattern.lo + tol && p <= pattern.hi - tol) reference.push_back(p);
    }
    if (shifted.size() != reference.size()) continue;
    bool same = true;
    for (std::size_t i = 0; i < shifted.size() && same; ++i) same = std::abs(shifted[i] - reference[i]) <= tol;
    if (same) out.push_back(t);
  }
  return out;
}

}  // namespace kamlab
