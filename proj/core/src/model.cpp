#include "kamlab/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "kamlab/error.hpp"

namespace kamlab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_coupling(double lambda, double coupling) {
  if (!std::isfinite(lambda)) throw ParameterError("lambda must be finite");
  if (!(coupling >= 0.0) || !std::isfinite(coupling)) {
    throw ParameterError("coupling K must be finite and >= 0, got " + std::to_string(coupling));
  }
}

}  // namespace

InteractionModel InteractionModel::periodic(double lambda, double coupling) {
  check_coupling(lambda, coupling);
  InteractionModel m;
  m.spec_.family = Family::fk_periodic;
  m.spec_.lambda = lambda;
  m.spec_.coupling = coupling;
  m.spec_.substrate = SubstrateSpec{0.0, 1.0};
  return m;
}

InteractionModel InteractionModel::quasiperiodic(double lambda, double coupling,
                                                 std::shared_ptr<const Substrate> substrate) {
  check_coupling(lambda, coupling);
  if (!substrate) throw ParameterError("quasi-periodic model needs a substrate");
  InteractionModel m;
  m.spec_.family = Family::fk_quasiperiodic;
  m.spec_.lambda = lambda;
  m.spec_.coupling = coupling;
  m.spec_.substrate = substrate->spec();
  m.substrate_ = std::move(substrate);
  return m;
}

InteractionModel InteractionModel::with_lambda(double lambda) const {
  InteractionModel m = *this;
  check_coupling(lambda, spec_.coupling);
  m.spec_.lambda = lambda;
  return m;
}

Interval InteractionModel::domain() const {
  if (is_periodic()) {
    const double inf = std::numeric_limits<double>::infinity();
    return {-inf, inf};
  }
  return substrate_->range();
}

double InteractionModel::potential(double x) const {
  if (is_periodic()) {
    // x - floor(x) is exact, so V vanishes exactly on the integers.
    return 1.0 - std::cos(kTwoPi * (x - std::floor(x)));
  }
  const Cell c = substrate_->cell_at(x);
  if (c.type == CellType::unit) return 1.0 - std::cos(kTwoPi * c.offset);
  const double rho = spec_.substrate.rho;
  return rho * rho * (1.0 - std::cos(kTwoPi * c.offset / rho));
}

double InteractionModel::energy_periodic(double x, double y) const {
  if (!is_periodic()) throw ParameterError("periodic wrapper requires the periodic family");
  // The quadratic term is minimized by the lift closest to x + lambda.
  const double k = std::round(x + spec_.lambda - y);
  return energy(x, y + k);
}

double InteractionModel::chain_energy(std::span<const double> chain) const {
  if (chain.size() < 2) throw ParameterError("chain needs at least two points");
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < chain.size(); ++i) total += energy(chain[i], chain[i + 1]);
  return total;
}

double InteractionModel::self_interaction_inf(Interval window, double grid_step) const {
  const Grid g(window, grid_step);
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < g.size(); ++i) best = std::min(best, energy(g.node(i), g.node(i)));
  return best;
}

TwistReport InteractionModel::twist_sample(Interval window, int n_samples) const {
  if (n_samples < 4) throw ParameterError("twist sampling needs at least 4 samples");
  if (!(window.length() > 0.0)) throw ParameterError("twist sampling window must have positive length");
  constexpr double e = 1e-4;
  TwistReport rep;
  rep.min = std::numeric_limits<double>::infinity();
  rep.max = -rep.min;
  const double span = window.length();
  for (int i = 0; i < n_samples; ++i) {
    const double x = window.lo + (i + 0.5) * span / n_samples;
    const double y = x + spec_.lambda + 0.75 * std::sin(1.7 * i);
    const double mixed =
        (energy(x + e, y + e) - energy(x + e, y - e) - energy(x - e, y + e) + energy(x - e, y - e)) / (4.0 * e * e);
    rep.samples.push_back({x, y, mixed});
    rep.min = std::min(rep.min, mixed);
    rep.max = std::max(rep.max, mixed);
  }
  return rep;
}

double InteractionModel::jump_radius(double level) const {
  if (!(level >= 0.0)) throw ParameterError("jump radius level must be >= 0");
  return std::abs(spec_.lambda) + std::sqrt(2.0 * level);
}

double InteractionModel::argmin_radius(double lipschitz, double e_bar) const {
  if (!(lipschitz >= 0.0)) throw ParameterError("Lipschitz bound must be >= 0");
  const double a = std::abs(spec_.lambda);
  const double b = a + lipschitz;
  return b + std::sqrt(std::max(0.0, b * b - a * a + 2.0 * std::max(0.0, e_bar)));
}

double InteractionModel::curvature_bound() const { return 4.0 + spec_.coupling * kTwoPi * kTwoPi; }

double InteractionModel::potential_sup() const {
  const double rho = is_periodic() ? 1.0 : spec_.substrate.rho;
  return 2.0 * std::max(1.0, rho * rho);
}

double InteractionModel::potential_slope_sup() const {
  const double rho = is_periodic() ? 1.0 : spec_.substrate.rho;
  return kTwoPi * std::max(1.0, rho);
}

}  // namespace kamlab
