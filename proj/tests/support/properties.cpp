#include "properties.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <sstream>

#include "kamlab/ground_action.hpp"
#include "kamlab/kam.hpp"
#include "kamlab/mane.hpp"
#include "oracles.hpp"

namespace properties {

using kamlab::Grid;
using kamlab::InteractionModel;

namespace {

struct RandomModel {
  InteractionModel model;
  double e_bar;
  std::string label;
};

// Periodic model with lambda in [-1.2, 1.2], K in [0, 0.3]. The level is the
// certified lower bound, which never exceeds the grid ground action.
RandomModel random_periodic(oracle::Rng& rng) {
  const double lambda = rng.uniform(-1.2, 1.2);
  const double coupling = rng.uniform(0.0, 0.3);
  InteractionModel m = InteractionModel::periodic(lambda, coupling);
  const double e_bar = kamlab::bracket(m, Grid({-1.0, 1.0}, 1.0 / 16.0), 8).lower;
  std::ostringstream os;
  os.precision(17);
  os << "lambda=" << lambda << " K=" << coupling << " e_bar=" << e_bar;
  return {std::move(m), e_bar, os.str()};
}

const Grid& property_grid() {
  static const Grid g({-3.0, 3.0}, 1.0 / 16.0);
  return g;
}

double random_node(oracle::Rng& rng, const Grid& g) {
  return g.node(static_cast<std::size_t>(rng.integer(0, static_cast<std::int64_t>(g.size()) - 1)));
}

void record(Outcome& o, double violation, const std::string& what) {
  ++o.cases;
  o.worst = std::max(o.worst, violation);
  if (violation > 0.0) {
    if (o.failures == 0) o.first_failure = what;
    ++o.failures;
  }
}

double mane(const RandomModel& r, double x, double y) {
  return kamlab::mane_potential(r.model, property_grid(), x, y, r.e_bar).value;
}

struct DyadicCase {
  InteractionModel model = InteractionModel::periodic(0.0, 0.0);
  Grid grid;
  double e_bar = 0.0;
  std::vector<double> u;
};

// K = 0, lambda and step multiples of 1/8, values multiples of 2^-10: every
// sum the operator forms is representable, so identities hold bitwise.
DyadicCase dyadic_case(oracle::Rng& rng) {
  DyadicCase c;
  c.model = InteractionModel::periodic(static_cast<double>(rng.integer(-8, 8)) / 8.0, 0.0);
  c.grid = Grid({-2.0, 2.0}, 1.0 / 8.0);
  c.e_bar = static_cast<double>(rng.integer(0, 512)) / 1024.0;
  c.u.resize(c.grid.size());
  for (double& v : c.u) v = static_cast<double>(rng.integer(-2048, 2048)) / 1024.0;
  return c;
}

constexpr double kRadius = 3.0;

}  // namespace

Outcome triangle_inequality(std::uint64_t seed, int cases) {
  Outcome o{"triangle inequality"};
  oracle::Rng rng(seed);
  const Grid& g = property_grid();
  for (int k = 0; k < cases; ++k) {
    const RandomModel r = random_periodic(rng);
    const double x = random_node(rng, g), y = random_node(rng, g), z = random_node(rng, g);
    const double lhs = mane(r, x, z);
    const double rhs = mane(r, x, y) + mane(r, y, z);
    // Sums of up to ~100 bonds of size <= 10 carry roundoff below 1e-12.
    record(o, lhs - rhs - 1e-12, r.label);
  }
  return o;
}

Outcome potential_bounds(std::uint64_t seed, int cases) {
  Outcome o{"potential bounds"};
  oracle::Rng rng(seed);
  const Grid& g = property_grid();
  for (int k = 0; k < cases; ++k) {
    const RandomModel r = random_periodic(rng);
    const double x = random_node(rng, g), y = random_node(rng, g);
    const double s = mane(r, x, y);
    const double upper = r.model.energy(x, y) - r.e_bar;
    const double lower = r.e_bar - r.model.energy(y, x);
    record(o, std::max(s - upper, lower - s - 1e-12), r.label);
  }
  return o;
}

Outcome operator_monotone(std::uint64_t seed, int cases) {
  Outcome o{"operator monotone"};
  oracle::Rng rng(seed);
  const Grid& g = property_grid();
  for (int k = 0; k < cases; ++k) {
    const InteractionModel m = InteractionModel::periodic(rng.uniform(-1.2, 1.2), rng.uniform(0.0, 0.5));
    const double e_bar = rng.uniform(0.0, 0.5);
    std::vector<double> u(g.size()), v(g.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
      u[i] = rng.uniform(-2.0, 2.0);
      v[i] = u[i] + rng.uniform(0.0, 1.0);
    }
    const auto tu = kamlab::lax_oleinik(m, g, u, e_bar, kRadius).values;
    const auto tv = kamlab::lax_oleinik(m, g, v, e_bar, kRadius).values;
    double worst = 0.0;
    for (std::size_t i = 0; i < tu.size(); ++i) worst = std::max(worst, tu[i] - tv[i]);
    record(o, worst, "case " + std::to_string(k));
  }
  return o;
}

Outcome operator_shift(std::uint64_t seed, int cases) {
  Outcome o{"operator shift-equivariant"};
  oracle::Rng rng(seed);
  for (int k = 0; k < cases; ++k) {
    DyadicCase d = dyadic_case(rng);
    const double c = static_cast<double>(rng.integer(-4096, 4096)) / 1024.0;
    std::vector<double> shifted = d.u;
    for (double& v : shifted) v += c;
    const auto tu = kamlab::lax_oleinik(d.model, d.grid, d.u, d.e_bar, kRadius).values;
    const auto ts = kamlab::lax_oleinik(d.model, d.grid, shifted, d.e_bar, kRadius).values;
    double worst = 0.0;
    for (std::size_t i = 0; i < tu.size(); ++i) worst = std::max(worst, std::abs(ts[i] - (tu[i] + c)));
    record(o, worst, "case " + std::to_string(k));
  }
  return o;
}

Outcome operator_nonexpansive(std::uint64_t seed, int cases) {
  Outcome o{"operator non-expansive"};
  oracle::Rng rng(seed);
  for (int k = 0; k < cases; ++k) {
    DyadicCase d = dyadic_case(rng);
    std::vector<double> v = d.u;
    double input = 0.0;
    for (double& x : v) {
      x += static_cast<double>(rng.integer(-512, 512)) / 1024.0;
    }
    for (std::size_t i = 0; i < v.size(); ++i) input = std::max(input, std::abs(v[i] - d.u[i]));
    const auto tu = kamlab::lax_oleinik(d.model, d.grid, d.u, d.e_bar, kRadius).values;
    const auto tv = kamlab::lax_oleinik(d.model, d.grid, v, d.e_bar, kRadius).values;
    double output = 0.0;
    for (std::size_t i = 0; i < tu.size(); ++i) output = std::max(output, std::abs(tu[i] - tv[i]));
    record(o, output - input, "case " + std::to_string(k));
  }
  return o;
}

Outcome chain_monotone(std::uint64_t seed, int cases) {
  Outcome o{"backtracked chains strictly monotone"};
  oracle::Rng rng(seed);
  const Grid& g = property_grid();
  for (int k = 0; k < cases; ++k) {
    const RandomModel r = random_periodic(rng);
    double x = random_node(rng, g), y = random_node(rng, g);
    while (std::abs(y - x) < 2.0 * g.step()) y = random_node(rng, g);
    const kamlab::ManeValue v = kamlab::mane_potential(r.model, g, x, y, r.e_bar);
    const bool ok = y > x ? v.chain.strictly_increasing() : v.chain.strictly_decreasing();
    const bool ends = v.chain.points.front() == x && v.chain.points.back() == y;
    const double mismatch = std::abs(v.chain.reduced_action - v.value);
    record(o, (ok && ends ? 0.0 : 1.0) + std::max(0.0, mismatch - 1e-9), r.label);
  }
  return o;
}

Outcome pattern_equivariance(std::uint64_t seed, int cases) {
  Outcome o{"pattern equivariance of E and S"};
  oracle::Rng rng(seed);
  const kamlab::SubstrateSpec spec{1.0 / std::sqrt(5.0), std::sqrt(3.0)};
  const auto sub = std::make_shared<const kamlab::Substrate>(kamlab::Substrate::generate(spec, -60, 60));
  const double step = 1.0 / 32.0;
  int attempts = 0;
  while (o.cases < cases) {
    if (++attempts > 20 * cases) {
      o.failures += cases - o.cases;
      o.first_failure = "too few return vectors found";
      break;
    }
    const InteractionModel m =
        InteractionModel::quasiperiodic(rng.uniform(-1.0, 1.0), rng.uniform(0.0, 0.2), sub);
    const double e_bar = rng.uniform(0.0, 0.2);
    const double x = rng.uniform(-15.0, 15.0);
    const double y = x + (rng.integer(0, 1) ? 1.0 : -1.0) * rng.uniform(0.25, 2.5);
    // The pattern must hold every cell an energy term can read.
    const kamlab::PatternQuery q{0.5 * (x + y), 0.5 * std::abs(y - x) + spec.rho + 0.5};
    const auto ts = sub->return_vectors(q, {-40.0, 40.0}, 1e-9);
    std::vector<double> nonzero;
    for (double t : ts) {
      if (std::abs(t) > 0.5) nonzero.push_back(t);
    }
    if (nonzero.empty()) continue;
    const double t = nonzero[static_cast<std::size_t>(rng.integer(0, static_cast<std::int64_t>(nonzero.size()) - 1))];

    const double de = std::abs(m.energy(x + t, y + t) - m.energy(x, y));
    const kamlab::Interval w{std::min(x, y) - step, std::max(x, y) + step};
    const Grid g(w, step, x);
    // Same index range on the translated lattice; node i of gt is node i of g plus t.
    const Grid gt({g.lo() + t - 0.5 * step, g.hi() + t + 0.5 * step}, step, x + t);
    const std::size_t ix = g.index_of(x);
    const std::size_t iy = g.snap(y);
    const double s = kamlab::mane_potential(m, g, g.node(ix), g.node(iy), e_bar).value;
    const double st = kamlab::mane_potential(m, gt, gt.node(ix), gt.node(iy), e_bar).value;
    const double ds = std::abs(st - s);
    std::ostringstream os;
    os.precision(17);
    os << "x=" << x << " y=" << y << " t=" << t << " dE=" << de << " dS=" << ds;
    record(o, std::max(de - 1e-9, ds - 1e-7), os.str());
  }
  return o;
}

std::vector<Outcome> run_all(std::uint64_t seed, int cases) {
  return {triangle_inequality(seed, cases), potential_bounds(seed + 1, cases),
          operator_monotone(seed + 2, cases), operator_shift(seed + 3, cases),
          operator_nonexpansive(seed + 4, cases), chain_monotone(seed + 5, cases),
          pattern_equivariance(seed + 6, cases)};
}

}  // namespace properties
