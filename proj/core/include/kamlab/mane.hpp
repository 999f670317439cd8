#pragma once

#include <cstddef>
#include <vector>

#include "kamlab/ground_action.hpp"
#include "kamlab/grid.hpp"
#include "kamlab/model.hpp"

namespace kamlab {

struct Chain {
  std::vector<double> points;
  double energy = 0.0;
  double reduced_action = 0.0;  // energy - edges * e_bar

  std::size_t edges() const { return points.empty() ? 0 : points.size() - 1; }
  bool strictly_increasing() const;
  bool strictly_decreasing() const;
};

Chain make_chain(const InteractionModel& m, std::vector<double> points, double e_bar);

struct ManeOptions {
  double level_slack = 2.0;
  int max_refinements = 8;
};

// Single-source values S(ref, x) on every node of `grid`. Nodes right of ref
// come from increasing chains, nodes left of ref from decreasing chains;
// S(ref, ref) = E(ref, ref) - e_bar.
struct ManeTable {
  Grid grid;
  double ref = 0.0;
  std::size_t ref_index = 0;
  double e_bar_used = 0.0;
  double jump_radius = 0.0;
  std::vector<double> values;
  std::vector<std::size_t> predecessor;  // ref_index at ref and its direct successors
  std::vector<int> chain_length;         // edges of the backtracked chain

  double at(double x) const { return values[grid.index_of(x)]; }
  Chain chain_to(const InteractionModel& m, double x) const;
  std::size_t forward_count() const { return values.size() - ref_index; }
  std::size_t backward_count() const { return ref_index + 1; }
};

ManeTable mane_table(const InteractionModel& m, const Grid& g, double ref, double e_bar, const ManeOptions& opt = {});

struct ManeValue {
  double value = 0.0;
  Chain chain;
};

// Shortest monotone path from x to y over the nodes between them.
ManeValue mane_potential(const InteractionModel& m, const Grid& g, double x, double y, double e_bar,
                         const ManeOptions& opt = {});

enum class Direction { increasing, decreasing };

// Chain realizing S(a, b) (increasing) or S(b, a) (decreasing) for the grid
// nodes nearest the ends of `window`.
Chain calibrated_configuration(const InteractionModel& m, const Grid& g, Direction dir, Interval window, double e_bar);

// Largest |S(x_i, x_j) - partial sum of (E - e_bar)| over spot checks of
// chain index pairs.
double calibration_defect(const InteractionModel& m, const Grid& g, const Chain& chain, double e_bar,
                          std::size_t max_queries = 16);

struct Fundamental {
  Chain chain;
  double displacement = 0.0;
  double rotation = 0.0;
  double jump_radius = 0.0;
};

// Free-endpoint minimizer over n bonds. The final node is chosen among exact
// ties nearest the window center; BoundaryContact if the chain touches an
// end node.
Fundamental fundamental_configuration(const InteractionModel& m, const Grid& g, int n, double e_bar = 0.0);

enum class Ordering : int { decreasing = -1, undecided = 0, increasing = 1 };
const char* to_string(Ordering o);

struct OrderingReport {
  Ordering epsilon = Ordering::undecided;
  std::vector<int> sizes;
  std::vector<int> signs;
  std::vector<double> rotations;
  std::vector<Fundamental> fundamentals;
  int n_emp = 0;
};

// Fundamentals on windows of width n R + 4 centered at 0, with
// R = jump_radius(n inf E(x,x)). Undecided unless `verdict` is nondegenerate.
OrderingReport preferred_ordering(const InteractionModel& m, double step, const std::vector<int>& sizes,
                                  Degeneracy verdict, double e_bar = 0.0);

struct GrowthReport {
  double slope_ordered = 0.0;
  double slope_anti = 0.0;
  double gamma = 0.0;  // anti side: S(ref, y) >= gamma |y - ref| - delta
  double delta = 0.0;
  double span_ordered = 0.0;
  double span_anti = 0.0;
};

// Least-squares slopes of S(ref, y) against |y - ref| over the outer
// `fit_fraction` of each side. The ordered side is y > ref unless
// epsilon is decreasing.
GrowthReport growth_dichotomy(const ManeTable& t, double fit_fraction, Ordering epsilon, double lambda);

BoundsRecord estimate_bounds(const InteractionModel& m, const ManeTable& t, const Chain& calibrated,
                             const OrderingReport& ordering, double flip_width = 0.0);

}  // namespace kamlab
