#pragma once

#include <memory>
#include <span>
#include <vector>

#include "kamlab/grid.hpp"
#include "kamlab/substrate.hpp"

namespace kamlab {

enum class Family { fk_periodic, fk_quasiperiodic };

struct ModelSpec {
  Family family = Family::fk_periodic;
  double lambda = 0.0;
  double coupling = 0.0;  // K >= 0
  SubstrateSpec substrate;  // ignored for the periodic family
};

struct TwistSample {
  double x = 0.0;
  double y = 0.0;
  double mixed = 0.0;  // central difference of d^2 E / dx dy
};

struct TwistReport {
  std::vector<TwistSample> samples;
  double min = 0.0;
  double max = 0.0;
};

// Empirical constants measured on computed minimizers.
struct BoundsRecord {
  double eta0 = 0.0;  // largest tested eta with E(x,y) - ebar > eta whenever |y - x| < eta
  double r = 0.0;     // smallest jump of a calibrated chain
  double R = 0.0;     // largest jump of a calibrated chain
  double A = 0.0;     // chain length <= A |y - x| + B
  double B = 0.0;
  double L = 0.0;     // width of the argmin direction flip
  double phi = 0.0;   // smallest |rotation| of a fundamental configuration
  int N = 0;          // smallest size from which fundamentals were monotone
};

// E(x, y) = (y - x - lambda)^2 / 2 + K V(x) with V >= 0 and V = 0 on the
// substrate. Immutable; all evaluations are pure.
class InteractionModel {
 public:
  static InteractionModel periodic(double lambda, double coupling);
  static InteractionModel quasiperiodic(double lambda, double coupling, std::shared_ptr<const Substrate> substrate);

  const ModelSpec& spec() const { return spec_; }
  double lambda() const { return spec_.lambda; }
  double coupling() const { return spec_.coupling; }
  bool is_periodic() const { return spec_.family == Family::fk_periodic; }
  const Substrate* substrate() const { return substrate_.get(); }
  // Same model with a different drift.
  InteractionModel with_lambda(double lambda) const;
  // Interval on which V can be evaluated.
  Interval domain() const;

  double potential(double x) const;
  double energy(double x, double y) const {
    const double d = y - x - spec_.lambda;
    return 0.5 * d * d + spec_.coupling * potential(x);
  }
  // min over integer lifts k of E(x, y + k); periodic family only.
  double energy_periodic(double x, double y) const;
  double chain_energy(std::span<const double> chain) const;

  double self_interaction_inf(Interval window, double grid_step) const;
  TwistReport twist_sample(Interval window, int n_samples) const;
  // |lambda| + sqrt(2 level): beyond it (y - x - lambda)^2 / 2 exceeds level.
  double jump_radius(double level) const;
  // Largest |y - x| at which E(x,y) - ebar <= lipschitz |y - x| can hold.
  double argmin_radius(double lipschitz, double e_bar) const;
  // Gershgorin bound on the chain-energy Hessian rows: 4 + K sup|V''|.
  double curvature_bound() const;
  double potential_sup() const;
  double potential_slope_sup() const;

 private:
  ModelSpec spec_;
  std::shared_ptr<const Substrate> substrate_;
};

}  // namespace kamlab
