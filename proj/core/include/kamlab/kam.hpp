#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kamlab/ground_action.hpp"
#include "kamlab/grid.hpp"
#include "kamlab/mane.hpp"
#include "kamlab/model.hpp"

namespace kamlab {

enum class SolutionType { I, II, III, unknown };
const char* to_string(SolutionType t);
SolutionType parse_solution_type(const std::string& s);

// Grid function u normalized to u(0) = 0 (or the window center when 0 is not
// a node). Argmins come from the plain operator restricted to the window.
struct KamSolution {
  Grid grid;
  std::vector<double> values;
  double e_bar_used = 0.0;
  std::vector<double> argmin;
  SolutionType type_label = SolutionType::unknown;
  Ordering epsilon_used = Ordering::undecided;
  double lip_estimate = 0.0;
  double slope_left = 0.0;   // d u / d|y| over the outer left third
  double slope_right = 0.0;
  double search_radius = 0.0;
  double boundary_ref = 0.0;
  int iterations = 0;
  double residual = 0.0;  // sup |T_N[u] - u| at exit

  double at(double x) const { return values[grid.index_of(x)]; }
};

struct LaxOleinikResult {
  std::vector<double> values;
  std::vector<std::size_t> argmin;
};

// T[u](y) = min_{|x - y| <= radius} (u(x) + E(x, y)) - e_bar on the nodes of g.
LaxOleinikResult lax_oleinik(const InteractionModel& m, const Grid& g, std::span<const double> u, double e_bar,
                             double radius);

enum class InitialGuess { zero, boundary };

struct FixedPointOptions {
  double tol = 1e-8;
  int max_iter = 200000;
  InitialGuess init = InitialGuess::zero;
};

// Averaged iteration u <- (u + T_N[u]) / 2 on the window nodes, where T_N reads
// the Mane table outside the window.
KamSolution localized_fixed_point(const InteractionModel& m, const ManeTable& boundary, Interval window, double e_bar,
                                  const FixedPointOptions& opt = {});

struct BuildOptions {
  FixedPointOptions fixed_point;
  std::optional<double> boundary_ref;  // default: middle of the outer margin
  double initial_margin = 8.0;
};

// Kind I takes boundary data from the epsilon-preceding side, kind II from
// the succeeding side; kind III is the pointwise minimum of both.
KamSolution build_solution(const InteractionModel& m, double step, SolutionType kind, Interval window, double e_bar,
                           Ordering epsilon, const BuildOptions& opt = {});
KamSolution minimum_solution(const InteractionModel& m, const KamSolution& a, const KamSolution& b);
// Recomputes argmin locations on the window with the stored search radius.
void attach_argmin(const InteractionModel& m, KamSolution& u);

struct VerifyReport {
  double subaction_violation = 0.0;   // max u(y) - u(x) - (E(x,y) - e_bar)
  double calibration_residual = 0.0;  // max |min_x(u(x) + E(x,y) - e_bar) - u(y)| on the interior
  double c_star = 0.0;                // median of min_x(u(x) + E(x,y)) - u(y)
  double lipschitz = 0.0;
  double lipschitz_apriori = 0.0;
  std::optional<double> periodicity_defect;  // periodic family only
  std::size_t interior_nodes = 0;
  bool passed = false;
};

VerifyReport verify_weak_kam(const InteractionModel& m, const KamSolution& u, double tol);

struct ClassifyOptions {
  double theta_lin = 0.0;
  std::optional<double> theta_sub;        // default 0.2 theta_lin
  std::optional<double> flip_width_max;   // default 2 search radii
};

struct ClassifyReport {
  SolutionType label = SolutionType::unknown;
  double slope_preceding = 0.0;  // outward slope on the epsilon-preceding side
  double slope_succeeding = 0.0;
  double precede_fraction = 0.0;
  double succeed_fraction = 0.0;
  int transitions = 0;
  int flip_intervals = 0;
  Interval flip_interval;
  double flip_width = 0.0;
  std::string growth_evidence;
  std::string direction_evidence;
  std::string diagnostic;
};

ClassifyReport classify(const InteractionModel& m, const KamSolution& u, Ordering epsilon, const ClassifyOptions& opt);
// theta_lin = gamma / 2 from the measured growth dichotomy.
ClassifyOptions thresholds_from_growth(const GrowthReport& g);

double solution_distance(const KamSolution& u, const KamSolution& v, Interval window);

struct SweepRecord {
  double lambda = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  double estimate = 0.0;
  double self_inf = 0.0;
  Degeneracy verdict = Degeneracy::inconclusive;
  Ordering epsilon = Ordering::undecided;
};

struct SweepReport {
  std::vector<double> lambdas;
  std::vector<SweepRecord> records;
  double lambda_minus_est = 0.0;  // NaN when no side qualifies
  double lambda_plus_est = 0.0;
};

struct SweepOptions {
  int n_max = 32;
  double tol_verdict = 1e-3;
  std::vector<int> sizes{8, 12, 16};
  double ordering_step = 1.0 / 64.0;
  BracketOptions bracket;
};

SweepReport lambda_sweep(const InteractionModel& base, const std::vector<double>& lambdas, const Grid& g,
                         const SweepOptions& opt = {});

}  // namespace kamlab
