#include "kamlab/kam.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "kamlab/error.hpp"
#include "lattice.hpp"

namespace kamlab {

using detail::kInf;
using detail::WindowLattice;

const char* to_string(SolutionType t) {
  switch (t) {
    case SolutionType::I:
      return "I";
    case SolutionType::II:
      return "II";
    case SolutionType::III:
      return "III";
    case SolutionType::unknown:
      break;
  }
  return "unknown";
}

SolutionType parse_solution_type(const std::string& s) {
  if (s == "I") return SolutionType::I;
  if (s == "II") return SolutionType::II;
  if (s == "III") return SolutionType::III;
  if (s == "unknown") return SolutionType::unknown;
  throw ConfigurationError("unknown solution type '" + s + "' (expected I, II or III)");
}

namespace {

std::size_t anchor_index(const Grid& g) {
  if (g.window().contains(0.0)) return g.snap(0.0);
  return g.snap(g.window().center());
}

double adjacent_lipschitz(const std::vector<double>& v, double h, std::size_t b, std::size_t e) {
  double lip = 0.0;
  for (std::size_t i = b; i + 1 < e; ++i) lip = std::max(lip, std::abs(v[i + 1] - v[i]) / h);
  return lip;
}

struct InteriorRange {
  std::size_t begin = 0;
  std::size_t end = 0;  // exclusive
};

InteriorRange interior_of(const KamSolution& u) {
  const double margin = 2.0 * u.search_radius;
  InteriorRange r;
  const double lo = u.grid.lo() + margin;
  const double hi = u.grid.hi() - margin;
  if (!(hi > lo)) {
    throw ConfigurationError("window leaves no interior beyond two search radii (" +
                             std::to_string(u.search_radius) + ") from each end");
  }
  r.begin = u.grid.snap(lo);
  if (u.grid.node(r.begin) < lo) ++r.begin;
  r.end = u.grid.snap(hi) + 1;
  if (u.grid.node(r.end - 1) > hi) --r.end;
  return r;
}

struct Slopes {
  double left = 0.0;
  double right = 0.0;
};

double fit_slope(const std::vector<double>& t, const std::vector<double>& v) {
  if (t.size() < 2) return 0.0;
  const double n = static_cast<double>(t.size());
  double mt = 0, mv = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    mt += t[i];
    mv += v[i];
  }
  mt /= n;
  mv /= n;
  double num = 0, den = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    num += (t[i] - mt) * (v[i] - mv);
    den += (t[i] - mt) * (t[i] - mt);
  }
  return den > 0 ? num / den : 0.0;
}

// Outward slopes d u / d|y - c| over the outer third of each interior half.
Slopes outward_slopes(const KamSolution& u) {
  const InteriorRange in = interior_of(u);
  const double c = u.grid.node(anchor_index(u.grid));
  double reach_left = 0.0, reach_right = 0.0;
  for (std::size_t i = in.begin; i < in.end; ++i) {
    const double d = u.grid.node(i) - c;
    reach_left = std::max(reach_left, -d);
    reach_right = std::max(reach_right, d);
  }
  std::vector<double> tl, vl, tr, vr;
  for (std::size_t i = in.begin; i < in.end; ++i) {
    const double d = u.grid.node(i) - c;
    if (d < 0 && -d >= (2.0 / 3.0) * reach_left) {
      tl.push_back(-d);
      vl.push_back(u.values[i]);
    } else if (d > 0 && d >= (2.0 / 3.0) * reach_right) {
      tr.push_back(d);
      vr.push_back(u.values[i]);
    }
  }
  return {fit_slope(tl, vl), fit_slope(tr, vr)};
}

void normalize(KamSolution& u) {
  const double base = u.values[anchor_index(u.grid)];
  for (double& v : u.values) v -= base;
}

void finish(const InteractionModel& m, KamSolution& u) {
  normalize(u);
  attach_argmin(m, u);
  u.lip_estimate = adjacent_lipschitz(u.values, u.grid.step(), 0, u.values.size());
  try {
    const Slopes s = outward_slopes(u);
    u.slope_left = s.left;
    u.slope_right = s.right;
  } catch (const ConfigurationError&) {
    u.slope_left = u.slope_right = 0.0;
  }
}

}  // namespace

LaxOleinikResult lax_oleinik(const InteractionModel& m, const Grid& g, std::span<const double> u, double e_bar,
                             double radius) {
  if (u.size() != g.size()) throw ParameterError("table size does not match the grid");
  for (double v : u) {
    if (!std::isfinite(v)) throw ParameterError("Lax-Oleinik input must be finite");
  }
  const WindowLattice lat(m, g, radius);
  LaxOleinikResult r;
  r.values.resize(g.size());
  r.argmin.resize(g.size());
  lat.relax(u.data(), e_bar, 0, g.size(), r.values.data(), r.argmin.data());
  return r;
}

void attach_argmin(const InteractionModel& m, KamSolution& u) {
  const LaxOleinikResult r = lax_oleinik(m, u.grid, u.values, u.e_bar_used, u.search_radius);
  u.argmin.resize(u.values.size());
  for (std::size_t i = 0; i < r.argmin.size(); ++i) u.argmin[i] = u.grid.node(r.argmin[i]);
}

KamSolution localized_fixed_point(const InteractionModel& m, const ManeTable& boundary, Interval window, double e_bar,
                                  const FixedPointOptions& opt) {
  if (boundary.e_bar_used != e_bar) {
    throw ConfigurationError("Mane table was built with a different ground action estimate");
  }
  const Grid& G = boundary.grid;
  const Grid W = G.restrict(window);
  const std::size_t w0 = G.index_of(W.lo());
  const std::size_t w1 = w0 + W.size();  // exclusive
  const double h = G.step();

  double radius = m.argmin_radius(adjacent_lipschitz(boundary.values, h, 0, boundary.values.size()), e_bar);
  auto check_margin = [&](double r) {
    if (W.lo() - G.lo() < 2.0 * r || G.hi() - W.hi() < 2.0 * r) {
      throw ConfigurationError("boundary grid must extend two search radii (" + std::to_string(r) +
                               ") beyond the window");
    }
  };
  check_margin(radius);

  std::vector<double> u = boundary.values;
  if (opt.init == InitialGuess::zero) std::fill(u.begin() + static_cast<std::ptrdiff_t>(w0), u.begin() + static_cast<std::ptrdiff_t>(w1), 0.0);
  std::vector<double> t(G.size());
  std::vector<std::size_t> arg(G.size());

  WindowLattice lat(m, G, radius);
  int iterations = 0;
  double residual = kInf;
  for (int audit = 0;; ++audit) {
    while (true) {
      if (iterations >= opt.max_iter) {
        throw NonConvergence("localized fixed point did not converge; residual " + std::to_string(residual), residual);
      }
      lat.relax(u.data(), e_bar, w0, w1, t.data(), nullptr);
      ++iterations;
      double change = 0.0;
      for (std::size_t j = w0; j < w1; ++j) {
        const double next = 0.5 * (u[j] + t[j]);
        change = std::max(change, std::abs(next - u[j]));
        u[j] = next;
      }
      residual = 2.0 * change;
      if (change < opt.tol) break;
    }
    // Audit: the truncation must be inactive at every recorded argmin.
    lat.relax(u.data(), e_bar, w0, w1, t.data(), arg.data());
    bool touch = false;
    residual = 0.0;
    for (std::size_t j = w0; j < w1; ++j) {
      const std::size_t gap = arg[j] > j ? arg[j] - j : j - arg[j];
      touch = touch || gap >= lat.span();
      residual = std::max(residual, std::abs(t[j] - u[j]));
    }
    if (!touch) break;
    if (audit >= 3) throw NumericalInconsistency("argmin keeps touching the search radius");
    radius *= 2.0;
    check_margin(radius);
    lat.set_radius(radius);
  }

  KamSolution s;
  s.grid = W;
  s.values.assign(u.begin() + static_cast<std::ptrdiff_t>(w0), u.begin() + static_cast<std::ptrdiff_t>(w1));
  s.e_bar_used = e_bar;
  s.search_radius = radius;
  s.boundary_ref = boundary.ref;
  s.iterations = iterations;
  s.residual = residual;
  finish(m, s);
  return s;
}

KamSolution minimum_solution(const InteractionModel& m, const KamSolution& a, const KamSolution& b) {
  if (!a.grid.same_lattice(b.grid) || a.grid.first_index() != b.grid.first_index() || a.grid.size() != b.grid.size()) {
    throw ParameterError("minimum of solutions requires identical grids");
  }
  if (a.e_bar_used != b.e_bar_used) throw ParameterError("minimum of solutions requires the same ground action");
  KamSolution s = a;
  for (std::size_t i = 0; i < s.values.size(); ++i) s.values[i] = std::min(a.values[i], b.values[i]);
  s.search_radius = std::max(a.search_radius, b.search_radius);
  s.iterations = a.iterations + b.iterations;
  s.residual = std::max(a.residual, b.residual);
  s.type_label = SolutionType::unknown;
  finish(m, s);
  return s;
}

KamSolution build_solution(const InteractionModel& m, double step, SolutionType kind, Interval window, double e_bar,
                           Ordering epsilon, const BuildOptions& opt) {
  if (epsilon == Ordering::undecided) {
    throw ConfigurationError("building typed solutions requires a decided preferred ordering");
  }
  if (kind == SolutionType::unknown) throw ConfigurationError("solution kind must be I, II or III");
  if (kind == SolutionType::III) {
    const KamSolution a = build_solution(m, step, SolutionType::I, window, e_bar, epsilon, opt);
    const KamSolution b = build_solution(m, step, SolutionType::II, window, e_bar, epsilon, opt);
    KamSolution s = minimum_solution(m, a, b);
    s.epsilon_used = epsilon;
    return s;
  }
  // Kind I reads boundary data from the side the ordering comes from.
  const bool left = (kind == SolutionType::I) == (epsilon == Ordering::increasing);
  double margin = opt.initial_margin;
  for (int attempt = 0; attempt < 6; ++attempt) {
    const Grid G({window.lo - margin, window.hi + margin}, step);
    const double ref_guess = opt.boundary_ref.value_or(left ? window.lo - 0.5 * margin : window.hi + 0.5 * margin);
    const double ref = G.node(G.snap(ref_guess));
    const ManeTable table = mane_table(m, G, ref, e_bar);
    const double lip = adjacent_lipschitz(table.values, step, 0, table.values.size());
    const double radius = m.argmin_radius(lip, e_bar);
    if (2.0 * radius <= margin) {
      KamSolution s = localized_fixed_point(m, table, window, e_bar, opt.fixed_point);
      s.epsilon_used = epsilon;
      return s;
    }
    margin = std::ceil((2.0 * radius + 1.0) / step) * step;
  }
  throw ConfigurationError("could not size the boundary margin for the localized fixed point");
}

VerifyReport verify_weak_kam(const InteractionModel& m, const KamSolution& u, double tol) {
  const InteriorRange in = interior_of(u);
  const WindowLattice lat(m, u.grid, u.search_radius);
  const double e_bar = u.e_bar_used;
  const std::size_t n = u.values.size();
  VerifyReport r;
  r.subaction_violation = -kInf;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = lat.lo(j); i <= lat.hi(j); ++i) {
      r.subaction_violation = std::max(r.subaction_violation, u.values[j] - u.values[i] - (lat.weight(i, j) - e_bar));
    }
  }
  std::vector<double> levels;
  for (std::size_t j = in.begin; j < in.end; ++j) {
    double best = kInf;
    for (std::size_t i = lat.lo(j); i <= lat.hi(j); ++i) best = std::min(best, u.values[i] + lat.weight(i, j));
    r.calibration_residual = std::max(r.calibration_residual, std::abs(best - e_bar - u.values[j]));
    levels.push_back(best - u.values[j]);
  }
  r.interior_nodes = levels.size();
  std::nth_element(levels.begin(), levels.begin() + static_cast<std::ptrdiff_t>(levels.size() / 2), levels.end());
  r.c_star = levels[levels.size() / 2];

  r.lipschitz = adjacent_lipschitz(u.values, u.grid.step(), 0, n);
  // A-priori bound: variation of E over unit jumps and its Lipschitz constant
  // on the superlinearity radius.
  const double a = std::abs(m.lambda());
  const double kt = 0.5 * (1.0 + a) * (1.0 + a) + m.coupling() * m.potential_sup();
  const double r_ap = a + kt + std::sqrt((a + kt) * (a + kt) - a * a + 2.0 * (std::max(0.0, e_bar) + kt));
  const double c_lip = r_ap + 1.0 + a + m.coupling() * m.potential_slope_sup();
  r.lipschitz_apriori = std::max(2.0 * kt, c_lip);

  if (m.is_periodic()) {
    const double per = 1.0 / u.grid.step();
    if (std::abs(per - std::round(per)) < 1e-9) {
      const auto shift = static_cast<std::size_t>(std::round(per));
      double defect = 0.0;
      for (std::size_t j = in.begin; j + shift < in.end; ++j) {
        defect = std::max(defect, std::abs(u.values[j + shift] - u.values[j]));
      }
      r.periodicity_defect = defect;
    }
  }
  r.passed = r.subaction_violation <= tol && r.calibration_residual <= tol && std::abs(r.c_star - e_bar) <= tol;
  return r;
}

ClassifyOptions thresholds_from_growth(const GrowthReport& g) {
  ClassifyOptions o;
  o.theta_lin = 0.5 * g.gamma;
  return o;
}

ClassifyReport classify(const InteractionModel& m, const KamSolution& u, Ordering epsilon, const ClassifyOptions& opt) {
  ClassifyReport rep;
  if (epsilon == Ordering::undecided) {
    rep.diagnostic = "preferred ordering undecided";
    return rep;
  }
  if (!(opt.theta_lin > 0.0)) throw ConfigurationError("classification needs theta_lin > 0");
  const double expected_jump = std::max(std::abs(m.lambda()), u.grid.step());
  const double c = u.grid.node(anchor_index(u.grid));
  if (c - u.grid.lo() < 20.0 * expected_jump || u.grid.hi() - c < 20.0 * expected_jump) {
    throw ConfigurationError("classification window must span 20 expected jumps on each side");
  }
  const double theta_lin = opt.theta_lin;
  const double theta_sub = opt.theta_sub.value_or(0.2 * theta_lin);
  const double max_flip = opt.flip_width_max.value_or(2.0 * u.search_radius);
  const int eps = epsilon == Ordering::increasing ? 1 : -1;

  const Slopes s = outward_slopes(u);
  rep.slope_preceding = eps > 0 ? s.left : s.right;
  rep.slope_succeeding = eps > 0 ? s.right : s.left;
  const bool pre_sub = std::abs(rep.slope_preceding) < theta_sub;
  const bool succ_sub = std::abs(rep.slope_succeeding) < theta_sub;
  const bool pre_lin = rep.slope_preceding >= theta_lin;
  const bool succ_lin = rep.slope_succeeding <= -theta_lin;
  SolutionType growth = SolutionType::unknown;
  if (pre_sub && succ_sub) growth = SolutionType::I;
  if (pre_lin && succ_lin) growth = SolutionType::II;
  if (pre_sub && succ_lin) growth = SolutionType::III;
  rep.growth_evidence = to_string(growth);

  // Argmin direction in epsilon order: -1 precede, +1 succeed, 0 stay.
  const InteriorRange in = interior_of(u);
  KamSolution local = u;
  attach_argmin(m, local);
  std::vector<std::pair<double, int>> dirs;
  for (std::size_t j = in.begin; j < in.end; ++j) {
    const double d = eps * (local.argmin[j] - u.grid.node(j));
    dirs.emplace_back(eps * u.grid.node(j), d < 0 ? -1 : (d > 0 ? 1 : 0));
  }
  std::sort(dirs.begin(), dirs.end());
  std::size_t pre = 0, succ = 0;
  std::ptrdiff_t first_succ = -1, last_pre = -1;
  int prev = 0;
  for (std::size_t k = 0; k < dirs.size(); ++k) {
    const int d = dirs[k].second;
    if (d < 0) {
      ++pre;
      last_pre = static_cast<std::ptrdiff_t>(k);
    } else if (d > 0) {
      ++succ;
      if (first_succ < 0) first_succ = static_cast<std::ptrdiff_t>(k);
    }
    if (d != 0) {
      if (prev != 0 && d != prev) ++rep.transitions;
      prev = d;
    }
  }
  rep.precede_fraction = static_cast<double>(pre) / static_cast<double>(dirs.size());
  rep.succeed_fraction = static_cast<double>(succ) / static_cast<double>(dirs.size());
  SolutionType direction = SolutionType::unknown;
  if (pre == dirs.size()) direction = SolutionType::I;
  if (succ == dirs.size()) direction = SolutionType::II;
  if (pre > 0 && succ > 0) {
    const auto a = static_cast<std::size_t>(std::min(first_succ, last_pre));
    const auto b = static_cast<std::size_t>(std::max(first_succ, last_pre));
    const double ya = eps * dirs[a].first;
    const double yb = eps * dirs[b].first;
    rep.flip_interval = {std::min(ya, yb), std::max(ya, yb)};
    rep.flip_width = rep.flip_interval.length();
    int first_dir = 0, last_dir = 0;
    for (const auto& d : dirs) {
      if (d.second == 0) continue;
      if (first_dir == 0) first_dir = d.second;
      last_dir = d.second;
    }
    const bool ordered = first_dir < 0 && last_dir > 0;
    if (ordered && rep.flip_width <= max_flip) {
      rep.flip_intervals = 1;
      direction = SolutionType::III;
    } else {
      rep.flip_intervals = rep.transitions;
    }
  }
  rep.direction_evidence = to_string(direction);

  if (growth == direction && growth != SolutionType::unknown) {
    rep.label = growth;
  } else {
    rep.label = SolutionType::unknown;
    rep.diagnostic = std::string("growth suggests ") + to_string(growth) + ", argmin direction suggests " +
                     to_string(direction);
  }
  return rep;
}

double solution_distance(const KamSolution& u, const KamSolution& v, Interval window) {
  if (!u.grid.same_lattice(v.grid)) throw ParameterError("solutions live on different grids");
  if (u.e_bar_used != v.e_bar_used) throw ParameterError("solutions use different ground action estimates");
  const double u0 = u.values[anchor_index(u.grid)];
  const double v0 = v.values[anchor_index(v.grid)];
  double sup = 0.0;
  const Grid w = u.grid.restrict(window);
  for (std::size_t k = 0; k < w.size(); ++k) {
    const double x = w.node(k);
    sup = std::max(sup, std::abs((u.at(x) - u0) - (v.at(x) - v0)));
  }
  return sup;
}

SweepReport lambda_sweep(const InteractionModel& base, const std::vector<double>& lambdas, const Grid& g,
                         const SweepOptions& opt) {
  if (!std::is_sorted(lambdas.begin(), lambdas.end())) throw ParameterError("sweep lambdas must be sorted");
  SweepReport rep;
  rep.lambdas = lambdas;
  for (double lambda : lambdas) {
    const InteractionModel m = base.with_lambda(lambda);
    const GroundActionBracket b = bracket(m, g, opt.n_max, opt.bracket);
    const NondegeneracyReport nd = nondegeneracy_check(m, b, opt.tol_verdict);
    SweepRecord r;
    r.lambda = lambda;
    r.lower = b.lower;
    r.upper = b.upper;
    r.estimate = b.estimate;
    r.self_inf = nd.self_inf;
    r.verdict = nd.verdict;
    if (nd.verdict == Degeneracy::nondegenerate) {
      r.epsilon = preferred_ordering(m, opt.ordering_step, opt.sizes, nd.verdict, b.estimate).epsilon;
    }
    rep.records.push_back(r);
  }
  const double nan = std::numeric_limits<double>::quiet_NaN();
  rep.lambda_plus_est = nan;
  for (auto it = rep.records.rbegin(); it != rep.records.rend(); ++it) {
    if (it->verdict != Degeneracy::nondegenerate || it->epsilon != Ordering::increasing) break;
    rep.lambda_plus_est = it->lambda;
  }
  rep.lambda_minus_est = nan;
  for (const SweepRecord& r : rep.records) {
    if (r.verdict != Degeneracy::nondegenerate || r.epsilon != Ordering::decreasing) break;
    rep.lambda_minus_est = r.lambda;
  }
  return rep;
}

}  // namespace kamlab
