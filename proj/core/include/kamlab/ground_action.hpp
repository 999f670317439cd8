#pragma once

#include <optional>
#include <vector>

#include "kamlab/grid.hpp"
#include "kamlab/model.hpp"

namespace kamlab {

// Periodic models are solved on the circle of N = 1/step nodes with the
// lift-minimized energy; the grid window is then unused. Quasi-periodic
// models are solved on the window itself.

struct StepStats {
  int k = 0;
  double global_min = 0.0;          // min_y T^k[0](y)
  double increment = 0.0;           // change of global_min from step k-1
  double node_increment_min = 0.0;  // over interior nodes
  double node_increment_max = 0.0;
};

struct ValueIteration {
  Grid grid;
  bool torus = false;
  double jump_radius = 0.0;
  std::vector<double> table;  // T^n[0] on grid nodes
  std::vector<StepStats> steps;
};

ValueIteration value_iteration(const InteractionModel& m, const Grid& g, int n);
double fekete_lower(const InteractionModel& m, const Grid& g, int n);

struct CycleOptions {
  std::size_t max_starts = 128;  // torus starts are strided down to this count
  double half_width = 4.0;       // window runs confine cycles to start +- half_width
  std::size_t window_starts = 32;
};

double cycle_upper(const InteractionModel& m, const Grid& g, int n, const CycleOptions& opt = {});
// best[n] for n = 1..n_max (index 0 unused).
std::vector<double> cycle_profile(const InteractionModel& m, const Grid& g, int n_max, const CycleOptions& opt = {});

// Limit of the mean energy of the dyadic ladder configurations of level ell.
double ladder_upper(const ModelSpec& spec, int ell);
// Coupling below which some ladder level beats lambda^2 / 2:
// lambda^2 / 8 (1 - alpha (1 - rho)^2) / (1 + alpha (rho^2 - 1)); lambda^2 / 8
// for the periodic family.
double ladder_threshold(const ModelSpec& spec);

// Upper bound on (grid chain minimum - continuum chain minimum) per bond.
double discretization_margin(const InteractionModel& m, double step);

struct HistoryEntry {
  int n = 0;
  double chain_min = 0.0;  // fekete_lower(n)
  double cycle_min = 0.0;  // cycle_upper(n)
  double increment = 0.0;
};

struct BracketOptions {
  CycleOptions cycles;
  int ell_max = 16;
  int estimate_window = 5;
};

struct GroundActionBracket {
  double lower = 0.0;
  double upper = 0.0;
  double estimate = 0.0;
  double margin = 0.0;
  std::optional<double> ladder;
  int ladder_ell = 0;
  bool torus = false;
  Grid grid;
  std::vector<HistoryEntry> history;
  double node_increment_min = 0.0;  // last step, interior nodes
  double node_increment_max = 0.0;

  double width() const { return upper - lower; }
  bool contains(double v) const { return lower <= v && v <= upper; }
};

GroundActionBracket bracket(const InteractionModel& m, const Grid& g, int n_max, const BracketOptions& opt = {});

enum class Degeneracy { degenerate, nondegenerate, inconclusive };
const char* to_string(Degeneracy d);

struct NondegeneracyReport {
  Degeneracy verdict = Degeneracy::inconclusive;
  double self_inf = 0.0;
  double margin = 0.0;
  double gap = 0.0;  // self_inf - upper
};

// Verdict margin is max(tol_verdict, 4 * discretization margin).
NondegeneracyReport nondegeneracy_check(const InteractionModel& m, const GroundActionBracket& b,
                                        double tol_verdict = 1e-3);

}  // namespace kamlab
