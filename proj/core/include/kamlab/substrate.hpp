#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "kamlab/grid.hpp"

namespace kamlab {

// Point set q_k = k + (rho - 1) floor(k alpha); rho = 1 gives the integers.
struct SubstrateSpec {
  double alpha = 0.0;
  double rho = 1.0;

  // Throws ParameterError unless 0 < alpha < 1/2 and rho > 0.
  void validate() const;
};

enum class CellType { unit, rho };

struct Cell {
  std::int64_t k = 0;
  CellType type = CellType::unit;
  double offset = 0.0;  // x - q_k
  double length = 1.0;  // q_{k+1} - q_k
};

struct PatternQuery {
  double center = 0.0;
  double radius = 1.0;  // includes the equivariance margin
};

// Exact floor(k * alpha) for |k| < 2^52, using an FMA residual to resolve
// products that round onto an integer.
std::int64_t floor_product(std::int64_t k, double alpha);

class Substrate {
 public:
  // Eager generation over k in [k_min, k_max]; immutable afterwards.
  static Substrate generate(const SubstrateSpec& spec, std::int64_t k_min, std::int64_t k_max);

  const SubstrateSpec& spec() const { return spec_; }
  std::int64_t k_min() const { return k_min_; }
  std::int64_t k_max() const { return k_max_; }
  double point(std::int64_t k) const;
  int letter(std::int64_t k) const;
  std::span<const double> points() const { return points_; }
  std::span<const std::uint8_t> word() const { return word_; }
  // Cells are available on [q_{k_min}, q_{k_max}).
  Interval range() const { return {points_.front(), points_.back()}; }

  Cell cell_at(double x) const;
  // Overlapping occurrences of `b` (letters '0'/'1') per letter of the word.
  double subword_frequency(std::string_view b) const;
  // Translations t in `search` mapping the points of [c - r, c + r] onto the
  // points of [c + t - r, c + t + r], matched within `tol`.
  std::vector<double> return_vectors(const PatternQuery& q, Interval search, double tol = 1e-9) const;

 private:
  std::size_t index_of_point(double x) const;  // largest i with points_[i] <= x

  SubstrateSpec spec_;
  std::int64_t k_min_ = 0;
  std::int64_t k_max_ = 0;
  std::vector<double> points_;
  std::vector<std::uint8_t> word_;
};

}  // namespace kamlab
