#include "kamlab/mane.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "kamlab/error.hpp"
#include "lattice.hpp"

namespace kamlab {

using detail::kInf;
using detail::WindowLattice;

bool Chain::strictly_increasing() const {
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    if (!(points[i] < points[i + 1])) return false;
  }
  return true;
}

bool Chain::strictly_decreasing() const {
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    if (!(points[i] > points[i + 1])) return false;
  }
  return true;
}

Chain make_chain(const InteractionModel& m, std::vector<double> points, double e_bar) {
  Chain c;
  c.points = std::move(points);
  c.energy = m.chain_energy(c.points);
  c.reduced_action = c.energy - static_cast<double>(c.edges()) * e_bar;
  return c;
}

namespace {

// Monotone DAG sweeps away from r. Prefix values start at 0 so a single edge
// costs exactly E - e_bar, matching a left-to-right summation of any chain.
void sweep_from(const WindowLattice& lat, std::size_t r, double e_bar, ManeTable& t) {
  const std::size_t n = lat.size();
  t.values.assign(n, kInf);
  t.predecessor.assign(n, r);
  t.chain_length.assign(n, 0);
  std::vector<double> prefix(n, kInf);
  prefix[r] = 0.0;
  const std::size_t span = lat.span();
  for (std::size_t j = r + 1; j < n; ++j) {
    double best = kInf;
    std::size_t at = r;
    for (std::size_t i = (j - r > span ? j - span : r); i < j; ++i) {
      const double v = prefix[i] + (lat.weight(i, j) - e_bar);
      if (v < best) {
        best = v;
        at = i;
      }
    }
    prefix[j] = best;
    t.predecessor[j] = at;
    t.chain_length[j] = t.chain_length[at] + 1;
  }
  for (std::size_t jj = r; jj-- > 0;) {
    const std::size_t j = jj;
    double best = kInf;
    std::size_t at = r;
    const std::size_t i1 = std::min(r, j + span);
    for (std::size_t i = j + 1; i <= i1; ++i) {
      const double v = prefix[i] + (lat.weight(i, j) - e_bar);
      if (v < best) {
        best = v;
        at = i;
      }
    }
    prefix[j] = best;
    t.predecessor[j] = at;
    t.chain_length[j] = t.chain_length[at] + 1;
  }
  t.values = std::move(prefix);
  t.values[r] = lat.weight(r, r) - e_bar;
  t.chain_length[r] = 1;
}

bool touches_radius(const ManeTable& t, std::size_t span) {
  for (std::size_t j = 0; j < t.values.size(); ++j) {
    if (j == t.ref_index) continue;
    const std::size_t p = t.predecessor[j];
    const std::size_t gap = p > j ? p - j : j - p;
    if (gap >= span) return true;
  }
  return false;
}

double max_abs(const std::vector<double>& v) {
  double w = 0.0;
  for (double x : v) w = std::max(w, std::abs(x));
  return w;
}

}  // namespace

Chain ManeTable::chain_to(const InteractionModel& m, double x) const {
  const std::size_t j = grid.index_of(x);
  std::vector<double> pts;
  if (j == ref_index) {
    pts = {grid.node(j), grid.node(j)};
  } else {
    for (std::size_t i = j; i != ref_index; i = predecessor[i]) pts.push_back(grid.node(i));
    pts.push_back(grid.node(ref_index));
    std::reverse(pts.begin(), pts.end());
  }
  return make_chain(m, std::move(pts), e_bar_used);
}

ManeTable mane_table(const InteractionModel& m, const Grid& g, double ref, double e_bar, const ManeOptions& opt) {
  ManeTable t;
  t.grid = g;
  t.ref_index = g.index_of(ref);
  t.ref = g.node(t.ref_index);
  t.e_bar_used = e_bar;

  double level = std::max(0.0, e_bar) + opt.level_slack;
  WindowLattice lat(m, g, m.jump_radius(level));
  const std::size_t full_span = g.size() - 1;
  for (int round = 0;; ++round) {
    sweep_from(lat, t.ref_index, e_bar, t);
    t.jump_radius = lat.radius();
    if (lat.span() >= full_span) break;  // no truncation possible
    // Along an optimal chain E(a,b) - e_bar = S(ref,b) - S(ref,a) <= 2 max|S|.
    const double needed = 2.0 * max_abs(t.values) + std::max(0.0, e_bar) + opt.level_slack;
    const bool touch = touches_radius(t, lat.span());
    if (!touch && needed <= level) break;
    if (round + 1 >= opt.max_refinements) {
      if (touch) throw NumericalInconsistency("Mane table: backtracked edge still touches the jump radius");
      break;
    }
    if (touch) {
      const double doubled = 2.0 * lat.radius() - std::abs(m.lambda());
      level = std::max(needed, 0.5 * doubled * doubled);
    } else {
      level = needed;
    }
    lat.set_radius(m.jump_radius(level));
  }
  return t;
}

ManeValue mane_potential(const InteractionModel& m, const Grid& g, double x, double y, double e_bar,
                         const ManeOptions& opt) {
  const std::size_t ix = g.index_of(x);
  const std::size_t iy = g.index_of(y);
  const double xs = g.node(ix);
  const double ys = g.node(iy);
  ManeValue out;
  if (ix == iy) {
    out.value = m.energy(xs, xs) - e_bar;
    out.chain = make_chain(m, {xs, xs}, e_bar);
    return out;
  }
  const double single = 0.0 + (m.energy(xs, ys) - e_bar);
  const std::size_t gap = ix > iy ? ix - iy : iy - ix;
  if (gap >= 2) {
    const Grid sub = g.restrict({std::min(xs, ys), std::max(xs, ys)});
    const ManeTable t = mane_table(m, sub, xs, e_bar, opt);
    out.value = t.at(ys);
    out.chain = t.chain_to(m, ys);
  } else {
    out.value = kInf;
  }
  if (single < out.value) {
    out.value = single;
    out.chain = make_chain(m, {xs, ys}, e_bar);
  }
  return out;
}

Chain calibrated_configuration(const InteractionModel& m, const Grid& g, Direction dir, Interval window,
                               double e_bar) {
  const double expected_jump = std::max(std::abs(m.lambda()), g.step());
  if (window.length() < 10.0 * expected_jump) {
    throw ConfigurationError("calibrated configuration window must span at least 10 expected jumps");
  }
  const double a = g.node(g.snap(window.lo));
  const double b = g.node(g.snap(window.hi));
  return dir == Direction::increasing ? mane_potential(m, g, a, b, e_bar).chain
                                      : mane_potential(m, g, b, a, e_bar).chain;
}

double calibration_defect(const InteractionModel& m, const Grid& g, const Chain& chain, double e_bar,
                          std::size_t max_queries) {
  const std::size_t n = chain.points.size();
  if (n < 3) return 0.0;
  std::vector<double> partial(n, 0.0);
  for (std::size_t k = 1; k < n; ++k) {
    partial[k] = partial[k - 1] + (m.energy(chain.points[k - 1], chain.points[k]) - e_bar);
  }
  double worst = 0.0;
  const std::size_t stride = std::max<std::size_t>(1, (n - 1) / std::max<std::size_t>(1, max_queries));
  for (std::size_t q = 0; q < max_queries; ++q) {
    const std::size_t i = q * stride;
    if (i + 2 >= n) break;
    const std::size_t j = q % 2 == 0 ? n - 1 : std::min(n - 1, i + 2 + q);
    const double s = mane_potential(m, g, chain.points[i], chain.points[j], e_bar).value;
    worst = std::max(worst, std::abs(s - (partial[j] - partial[i])));
  }
  return worst;
}

Fundamental fundamental_configuration(const InteractionModel& m, const Grid& g, int n, double e_bar) {
  if (n < 1) throw ParameterError("fundamental configuration needs n >= 1");
  double diag = kInf;
  for (std::size_t i = 0; i < g.size(); ++i) diag = std::min(diag, m.energy(g.node(i), g.node(i)));
  // Total energy <= n inf E(x,x) and E >= 0 bound every bond.
  const double radius = m.jump_radius(static_cast<double>(n) * diag);
  const WindowLattice lat(m, g, radius);
  const std::size_t size = lat.size();

  std::vector<double> u(size, 0.0), next(size);
  std::vector<std::vector<std::size_t>> arg(static_cast<std::size_t>(n), std::vector<std::size_t>(size));
  for (int k = 0; k < n; ++k) {
    lat.relax(u.data(), 0.0, 0, size, next.data(), arg[static_cast<std::size_t>(k)].data());
    u.swap(next);
  }
  const double center = g.window().center();
  std::size_t end = 0;
  for (std::size_t j = 1; j < size; ++j) {
    if (u[j] < u[end] || (u[j] == u[end] && std::abs(g.node(j) - center) < std::abs(g.node(end) - center))) end = j;
  }
  std::vector<double> pts(static_cast<std::size_t>(n) + 1);
  std::size_t cur = end;
  for (int k = n; k >= 0; --k) {
    if (cur == 0 || cur + 1 == size) {
      throw BoundaryContact("fundamental configuration of size " + std::to_string(n) +
                            " touches the window boundary; widen the window");
    }
    pts[static_cast<std::size_t>(k)] = g.node(cur);
    if (k > 0) cur = arg[static_cast<std::size_t>(k - 1)][cur];
  }
  Fundamental f;
  f.chain = make_chain(m, std::move(pts), e_bar);
  f.displacement = f.chain.points.back() - f.chain.points.front();
  f.rotation = f.displacement / n;
  f.jump_radius = radius;
  return f;
}

const char* to_string(Ordering o) {
  switch (o) {
    case Ordering::increasing:
      return "+1";
    case Ordering::decreasing:
      return "-1";
    case Ordering::undecided:
      break;
  }
  return "undecided";
}

OrderingReport preferred_ordering(const InteractionModel& m, double step, const std::vector<int>& sizes,
                                  Degeneracy verdict, double e_bar) {
  OrderingReport rep;
  rep.sizes = sizes;
  std::sort(rep.sizes.begin(), rep.sizes.end());
  if (rep.sizes.empty() || verdict != Degeneracy::nondegenerate) return rep;
  rep.n_emp = rep.sizes.front();
  const double diag = m.self_interaction_inf({-1.0, 1.0}, step);
  int positive = 0, negative = 0;
  for (int n : rep.sizes) {
    const double radius = m.jump_radius(static_cast<double>(n) * diag);
    const double half = 0.5 * (n * radius + 4.0);
    const Grid g({-half, half}, step);
    Fundamental f = fundamental_configuration(m, g, n, e_bar);
    const int sign = f.displacement > 0.0 ? 1 : (f.displacement < 0.0 ? -1 : 0);
    positive += sign > 0 && f.chain.strictly_increasing() ? 1 : 0;
    negative += sign < 0 && f.chain.strictly_decreasing() ? 1 : 0;
    rep.signs.push_back(sign);
    rep.rotations.push_back(f.rotation);
    rep.fundamentals.push_back(std::move(f));
  }
  const int total = static_cast<int>(rep.sizes.size());
  if (positive == total) rep.epsilon = Ordering::increasing;
  if (negative == total) rep.epsilon = Ordering::decreasing;
  return rep;
}

namespace {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
};

LineFit least_squares(const std::vector<double>& t, const std::vector<double>& v) {
  const double n = static_cast<double>(t.size());
  double st = 0, sv = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    st += t[i];
    sv += v[i];
  }
  const double mt = st / n, mv = sv / n;
  double num = 0, den = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    num += (t[i] - mt) * (v[i] - mv);
    den += (t[i] - mt) * (t[i] - mt);
  }
  LineFit f;
  f.slope = den > 0 ? num / den : 0.0;
  f.intercept = mv - f.slope * mt;
  return f;
}

}  // namespace

GrowthReport growth_dichotomy(const ManeTable& t, double fit_fraction, Ordering epsilon, double lambda) {
  if (!(fit_fraction > 0.0 && fit_fraction <= 1.0)) throw ParameterError("fit fraction must lie in (0, 1]");
  const double expected_jump = std::max(std::abs(lambda), t.grid.step());
  const double span_fwd = t.grid.hi() - t.ref;
  const double span_bwd = t.ref - t.grid.lo();
  if (span_fwd < 20.0 * expected_jump || span_bwd < 20.0 * expected_jump) {
    throw ConfigurationError("Mane table must span at least 20 expected jumps on each side of the reference");
  }
  auto side_fit = [&](bool forward, double span) {
    std::vector<double> d, v;
    for (std::size_t i = 0; i < t.values.size(); ++i) {
      const double dist = t.grid.node(i) - t.ref;
      if ((forward && dist <= 0) || (!forward && dist >= 0)) continue;
      if (std::abs(dist) >= (1.0 - fit_fraction) * span) {
        d.push_back(std::abs(dist));
        v.push_back(t.values[i]);
      }
    }
    return std::make_pair(least_squares(d, v), std::make_pair(d, v));
  };
  const bool ordered_forward = epsilon != Ordering::decreasing;
  const auto [fwd, fwd_pts] = side_fit(true, span_fwd);
  const auto [bwd, bwd_pts] = side_fit(false, span_bwd);
  GrowthReport r;
  r.slope_ordered = ordered_forward ? fwd.slope : bwd.slope;
  r.slope_anti = ordered_forward ? bwd.slope : fwd.slope;
  r.span_ordered = ordered_forward ? span_fwd : span_bwd;
  r.span_anti = ordered_forward ? span_bwd : span_fwd;
  r.gamma = r.slope_anti;
  // Smallest delta with S >= gamma |y - ref| - delta on the whole anti side.
  r.delta = -kInf;
  for (std::size_t i = 0; i < t.values.size(); ++i) {
    const double dist = t.grid.node(i) - t.ref;
    const bool anti = ordered_forward ? dist < 0 : dist > 0;
    if (anti) r.delta = std::max(r.delta, r.gamma * std::abs(dist) - t.values[i]);
  }
  return r;
}

BoundsRecord estimate_bounds(const InteractionModel& m, const ManeTable& t, const Chain& calibrated,
                             const OrderingReport& ordering, double flip_width) {
  BoundsRecord b;
  b.r = kInf;
  b.R = 0.0;
  for (std::size_t i = 0; i + 1 < calibrated.points.size(); ++i) {
    const double jump = std::abs(calibrated.points[i + 1] - calibrated.points[i]);
    b.r = std::min(b.r, jump);
    b.R = std::max(b.R, jump);
  }
  if (!std::isfinite(b.r)) b.r = 0.0;

  std::vector<double> dist, len;
  for (std::size_t i = 0; i < t.values.size(); ++i) {
    if (i == t.ref_index) continue;
    dist.push_back(std::abs(t.grid.node(i) - t.ref));
    len.push_back(t.chain_length[i]);
  }
  const LineFit fit = dist.size() >= 2 ? least_squares(dist, len) : LineFit{};
  b.A = std::max(fit.slope, 1e-12);
  b.B = 0.0;
  for (std::size_t i = 0; i < dist.size(); ++i) b.B = std::max(b.B, len[i] - b.A * dist[i]);

  // Largest dyadic eta with E(x, y) - ebar > eta whenever |y - x| < eta.
  const double h = t.grid.step();
  const std::size_t stride = std::max<std::size_t>(1, t.values.size() / 256);
  for (double eta = h; eta < 4.0; eta *= 2.0) {
    double low = kInf;
    for (std::size_t i = 0; i < t.values.size(); i += stride) {
      const double x = t.grid.node(i);
      for (double d = -eta + h; d < eta; d += h) {
        if (t.grid.window().contains(x + d)) low = std::min(low, m.energy(x, x + d) - t.e_bar_used);
      }
    }
    if (low > eta) {
      b.eta0 = eta;
    } else {
      break;
    }
  }

  b.phi = kInf;
  for (double rot : ordering.rotations) b.phi = std::min(b.phi, std::abs(rot));
  if (!std::isfinite(b.phi)) b.phi = 0.0;
  b.N = ordering.epsilon == Ordering::undecided ? 0 : ordering.n_emp;
  b.L = flip_width;
  return b;
}

}  // namespace kamlab
