#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace oracle {

std::int64_t floor_over_sqrt5(std::int64_t k) {
  if (k == 0) return 0;
  const std::int64_t a = k < 0 ? -k : k;
  // m = floor(a / sqrt 5): largest m with 5 m^2 <= a^2.
  auto m = static_cast<std::int64_t>(static_cast<double>(a) / std::sqrt(5.0));
  while (5 * (m + 1) * (m + 1) <= a * a) ++m;
  while (5 * m * m > a * a) --m;
  return k > 0 ? m : -(m + 1);
}

double potential_scan(const std::vector<double>& points, double rho, double x) {
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    if (points[i] <= x && x < points[i + 1]) {
      const double length = points[i + 1] - points[i];
      const double off = x - points[i];
      const double pi = std::acos(-1.0);
      if (std::abs(length - 1.0) < 1e-9) return 1.0 - std::cos(2.0 * pi * off);
      return rho * rho * (1.0 - std::cos(2.0 * pi * off / rho));
    }
  }
  return std::numeric_limits<double>::quiet_NaN();
}

double periodic_energy(const kamlab::InteractionModel& m, double x, double y) {
  double best = std::numeric_limits<double>::infinity();
  for (int k = -8; k <= 8; ++k) best = std::min(best, m.energy(x, y + k));
  return best;
}

namespace {

void walk(const kamlab::InteractionModel& m, const std::vector<double>& nodes, std::size_t cur, std::size_t target,
          double acc, double e_bar, double& best) {
  if (cur == target) {
    best = std::min(best, acc);
    return;
  }
  const int dir = target > cur ? 1 : -1;
  for (std::size_t next = cur + dir;; next += dir) {
    walk(m, nodes, next, target, acc + (m.energy(nodes[cur], nodes[next]) - e_bar), e_bar, best);
    if (next == target) break;
  }
}

}  // namespace

double mane_enumerated(const kamlab::InteractionModel& m, const std::vector<double>& nodes, std::size_t i,
                       std::size_t j, double e_bar) {
  if (i == j) return m.energy(nodes[i], nodes[i]) - e_bar;
  double best = std::numeric_limits<double>::infinity();
  walk(m, nodes, i, j, 0.0, e_bar, best);
  return best;
}

std::vector<double> lax_oleinik(const kamlab::InteractionModel& m, const std::vector<double>& nodes,
                                const std::vector<double>& u, double e_bar, double radius) {
  std::vector<double> out(nodes.size(), std::numeric_limits<double>::infinity());
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      if (std::abs(nodes[i] - nodes[j]) > radius) continue;
      out[j] = std::min(out[j], u[i] + m.energy(nodes[i], nodes[j]));
    }
    out[j] -= e_bar;
  }
  return out;
}

double ladder_bound(double lambda, double coupling, double alpha, double rho, int ell, bool periodic) {
  // Bond means over the two cell types, weighted by their frequencies.
  const double mu1 = periodic ? 0.0 : alpha;
  const double mu00 = periodic ? 1.0 : 1.0 - 2.0 * alpha;
  if (periodic) rho = 1.0;
  const double step = 1.0 / std::pow(2.0, ell);
  double v = lambda * lambda / 2.0;
  v += coupling * (1.0 + mu1 * (rho * rho - 1.0));
  v += (1.0 + mu00) / 2.0 * step * (step / 2.0 - lambda);
  v += (1.0 - mu00) / 2.0 * rho * step * (rho * step / 2.0 - lambda);
  v -= (1.0 - mu00) * (1.0 - rho) * (1.0 - rho) / std::pow(2.0, 3 * ell + 3);
  return v;
}

double ladder_threshold(double lambda, double alpha, double rho) {
  return lambda * lambda / 8.0 * (1.0 - alpha * (1.0 - rho) * (1.0 - rho)) / (1.0 + alpha * (rho * rho - 1.0));
}

std::uint64_t Rng::next() {
  std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double Rng::uniform(double lo, double hi) {
  return lo + (hi - lo) * static_cast<double>(next() >> 11) * 0x1.0p-53;
}

std::int64_t Rng::integer(std::int64_t lo, std::int64_t hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<std::int64_t>(next() % span);
}

}  // namespace oracle
