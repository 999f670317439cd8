#include "kamlab/ground_action.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kamlab/error.hpp"
#include "lattice.hpp"

namespace kamlab {

using detail::kInf;
using detail::TorusLattice;
using detail::WindowLattice;

namespace {

double min_diagonal(const InteractionModel& m, const Grid& g) {
  double best = kInf;
  for (std::size_t i = 0; i < g.size(); ++i) best = std::min(best, m.energy(g.node(i), g.node(i)));
  return best;
}

void record_step(int k, const std::vector<double>& prev, const std::vector<double>& next, std::size_t ib,
                 std::size_t ie, std::vector<StepStats>& steps) {
  StepStats s;
  s.k = k;
  s.global_min = *std::min_element(next.begin(), next.end());
  s.increment = s.global_min - (steps.empty() ? 0.0 : steps.back().global_min);
  s.node_increment_min = kInf;
  s.node_increment_max = -kInf;
  for (std::size_t i = ib; i < ie; ++i) {
    const double d = next[i] - prev[i];
    s.node_increment_min = std::min(s.node_increment_min, d);
    s.node_increment_max = std::max(s.node_increment_max, d);
  }
  steps.push_back(s);
}

}  // namespace

ValueIteration value_iteration(const InteractionModel& m, const Grid& g, int n) {
  if (n < 1) throw ParameterError("value iteration needs n >= 1");
  ValueIteration out;
  if (m.is_periodic()) {
    const TorusLattice lat(m, g.step());
    out.grid = lat.grid();
    out.torus = true;
    out.jump_radius = 0.5 + std::abs(m.lambda());
    std::vector<double> u(lat.size(), 0.0), next(lat.size());
    for (int k = 1; k <= n; ++k) {
      lat.relax(u.data(), next.data());
      record_step(k, u, next, 0, lat.size(), out.steps);
      u.swap(next);
    }
    out.table = std::move(u);
    return out;
  }

  // Every edge of an optimal k-chain costs at most k * min E(x,x) since E >= 0.
  const double radius = m.jump_radius(static_cast<double>(n) * min_diagonal(m, g));
  if (!(g.window().length() > 2.0 * radius)) {
    throw ConfigurationError("grid window [" + std::to_string(g.lo()) + ", " + std::to_string(g.hi()) +
                             "] is too small for jump radius " + std::to_string(radius));
  }
  const WindowLattice lat(m, g, radius);
  out.grid = g;
  out.jump_radius = radius;
  const std::size_t ib = std::min(lat.span(), lat.size());
  const std::size_t ie = lat.size() > lat.span() ? lat.size() - lat.span() : ib;
  std::vector<double> u(lat.size(), 0.0), next(lat.size());
  for (int k = 1; k <= n; ++k) {
    lat.relax(u.data(), 0.0, 0, lat.size(), next.data(), nullptr);
    record_step(k, u, next, ib, std::max(ib, ie), out.steps);
    u.swap(next);
  }
  out.table = std::move(u);
  return out;
}

double fekete_lower(const InteractionModel& m, const Grid& g, int n) {
  const ValueIteration vi = value_iteration(m, g, n);
  return vi.steps.back().global_min / static_cast<double>(n);
}

std::vector<double> cycle_profile(const InteractionModel& m, const Grid& g, int n_max, const CycleOptions& opt) {
  if (n_max < 1) throw ParameterError("cycle search needs n >= 1");
  std::vector<double> best(static_cast<std::size_t>(n_max) + 1, kInf);

  auto run_from = [&](auto const& relax, std::size_t size, std::size_t s) {
    std::vector<double> d(size, kInf), next(size);
    d[s] = 0.0;
    for (int k = 1; k <= n_max; ++k) {
      relax(d, next);
      d.swap(next);
      best[static_cast<std::size_t>(k)] = std::min(best[static_cast<std::size_t>(k)], d[s] / k);
    }
  };

  if (m.is_periodic()) {
    const TorusLattice lat(m, g.step());
    const std::size_t n = lat.size();
    const std::size_t stride = std::max<std::size_t>(1, (n + opt.max_starts - 1) / std::max<std::size_t>(1, opt.max_starts));
    auto relax = [&](const std::vector<double>& u, std::vector<double>& out) { lat.relax(u.data(), out.data()); };
    for (std::size_t s = 0; s < n; s += stride) run_from(relax, n, s);
    return best;
  }

  // Cycles confined to local windows are genuine cycles, so every start gives
  // a valid upper bound; the confinement only affects tightness.
  const double hw = std::max(opt.half_width, 2.0 * g.step());
  const double radius = std::min(2.0 * hw, m.jump_radius(static_cast<double>(n_max) * min_diagonal(m, g)));
  const double a = g.lo() + hw;
  const double b = g.hi() - hw;
  const std::size_t count = std::max<std::size_t>(1, opt.window_starts);
  for (std::size_t c = 0; c < count; ++c) {
    const double center = b > a ? a + (b - a) * (static_cast<double>(c) + 0.5) / static_cast<double>(count)
                                : g.window().center();
    const double s_x = g.node(g.snap(center));
    const Grid local = g.restrict({std::max(g.lo(), s_x - hw), std::min(g.hi(), s_x + hw)});
    const WindowLattice lat(m, local, radius);
    auto relax = [&](const std::vector<double>& u, std::vector<double>& out) {
      lat.relax(u.data(), 0.0, 0, lat.size(), out.data(), nullptr);
    };
    run_from(relax, lat.size(), local.index_of(s_x));
  }
  return best;
}

double cycle_upper(const InteractionModel& m, const Grid& g, int n, const CycleOptions& opt) {
  return cycle_profile(m, g, n, opt)[static_cast<std::size_t>(n)];
}

double ladder_upper(const ModelSpec& spec, int ell) {
  if (ell < 1) throw ParameterError("ladder level must be >= 1");
  const bool periodic = spec.family == Family::fk_periodic;
  const double rho = periodic ? 1.0 : spec.substrate.rho;
  const double mu1 = periodic ? 0.0 : spec.substrate.alpha;
  const double mu00 = periodic ? 1.0 : 1.0 - 2.0 * spec.substrate.alpha;
  const double lambda = spec.lambda;
  const double p = std::ldexp(1.0, -ell);  // 2^-ell
  const double unit = p * (0.5 * p - lambda);
  const double wide = rho * p * (0.5 * rho * p - lambda);
  const double correction = (1.0 - mu00) * (1.0 - rho) * (1.0 - rho) * std::ldexp(1.0, -(3 * ell + 3));
  return 0.5 * lambda * lambda + spec.coupling * (1.0 + mu1 * (rho * rho - 1.0)) + 0.5 * (1.0 + mu00) * unit +
         0.5 * (1.0 - mu00) * wide - correction;
}

double ladder_threshold(const ModelSpec& spec) {
  const double base = spec.lambda * spec.lambda / 8.0;
  if (spec.family == Family::fk_periodic) return base;
  const double a = spec.substrate.alpha;
  const double rho = spec.substrate.rho;
  return base * (1.0 - a * (1.0 - rho) * (1.0 - rho)) / (1.0 + a * (rho * rho - 1.0));
}

double discretization_margin(const InteractionModel& m, double step) {
  // Rounding a stationary chain to the grid moves each point by <= h/2; the
  // energy rises by <= C (n+1) h^2 / 8 over n bonds, and (n+1)/n <= 2.
  return m.curvature_bound() * step * step / 4.0;
}

GroundActionBracket bracket(const InteractionModel& m, const Grid& g, int n_max, const BracketOptions& opt) {
  if (n_max < 2) throw ParameterError("bracket needs n_max >= 2");
  const ValueIteration vi = value_iteration(m, g, n_max);
  const std::vector<double> cycles = cycle_profile(m, g, n_max, opt.cycles);

  GroundActionBracket b;
  b.grid = vi.grid;
  b.torus = vi.torus;
  b.margin = discretization_margin(m, g.step());
  double best_chain = -kInf;
  double best_cycle = kInf;
  for (const StepStats& s : vi.steps) {
    HistoryEntry h;
    h.n = s.k;
    h.chain_min = s.global_min / s.k;
    h.cycle_min = cycles[static_cast<std::size_t>(s.k)];
    h.increment = s.increment;
    best_chain = std::max(best_chain, h.chain_min);
    best_cycle = std::min(best_cycle, h.cycle_min);
    b.history.push_back(h);
  }
  b.node_increment_min = vi.steps.back().node_increment_min;
  b.node_increment_max = vi.steps.back().node_increment_max;

  // E >= 0 for this family, so 0 is always a valid lower bound.
  b.lower = std::max(0.0, best_chain - b.margin);
  b.upper = best_cycle;
  double ladder = kInf;
  for (int ell = 1; ell <= opt.ell_max; ++ell) {
    const double v = ladder_upper(m.spec(), ell);
    if (v < ladder) {
      ladder = v;
      b.ladder_ell = ell;
    }
  }
  b.ladder = ladder;
  b.upper = std::min(b.upper, ladder);

  const int w = std::min<int>(opt.estimate_window, static_cast<int>(vi.steps.size()) - 1);
  double sum = 0.0;
  for (int i = 0; i < w; ++i) sum += vi.steps[vi.steps.size() - 1 - static_cast<std::size_t>(i)].increment;
  b.estimate = w > 0 ? sum / w : vi.steps.back().increment;

  if (b.lower > b.upper) {
    throw NumericalInconsistency("ground action bracket inverted: lower " + std::to_string(b.lower) + " > upper " +
                                 std::to_string(b.upper) + "; refine the grid");
  }
  if (b.estimate < b.lower) {
    if (b.lower - b.estimate > b.margin) {
      throw NumericalInconsistency("ground action estimate " + std::to_string(b.estimate) + " below lower bound " +
                                   std::to_string(b.lower));
    }
    b.lower = b.estimate;
  }
  if (b.estimate > b.upper) {
    if (b.estimate - b.upper > b.margin) {
      throw NumericalInconsistency("ground action estimate " + std::to_string(b.estimate) + " above upper bound " +
                                   std::to_string(b.upper));
    }
    b.upper = b.estimate;
  }
  return b;
}

const char* to_string(Degeneracy d) {
  switch (d) {
    case Degeneracy::degenerate:
      return "degenerate";
    case Degeneracy::nondegenerate:
      return "nondegenerate";
    case Degeneracy::inconclusive:
      break;
  }
  return "inconclusive";
}

NondegeneracyReport nondegeneracy_check(const InteractionModel& m, const GroundActionBracket& b, double tol_verdict) {
  NondegeneracyReport r;
  r.self_inf = m.self_interaction_inf(b.grid.window(), b.grid.step());
  r.margin = std::max(tol_verdict, 4.0 * b.margin);
  r.gap = r.self_inf - b.upper;
  if (b.upper < r.self_inf - r.margin) {
    r.verdict = Degeneracy::nondegenerate;
  } else if (std::abs(b.estimate - r.self_inf) < r.margin && r.self_inf - b.lower < r.margin) {
    r.verdict = Degeneracy::degenerate;
  } else {
    r.verdict = Degeneracy::inconclusive;
  }
  return r;
}

}  // namespace kamlab
