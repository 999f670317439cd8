#include "kamlab_cli/cli.hpp"

#include <charconv>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "kamlab/error.hpp"
#include "kamlab/ground_action.hpp"
#include "kamlab/kam.hpp"
#include "kamlab/mane.hpp"
#include "kamlab/parallel.hpp"
#include "kamlab_cli/config.hpp"
#include "kamlab_cli/io.hpp"
#include "kamlab_cli/recipes.hpp"

namespace kamlab::cli {

namespace fs = std::filesystem;

namespace {

struct Options {
  std::string config;
  std::string out;
  int threads = 0;
  std::string seed;
  std::string type;
  std::string solution;
  std::string recipe;
};

struct Context {
  RunConfig cfg;
  fs::path out;
  std::ostream& os;
};

// Resolved defaults shared by several subcommands.
int n_max(const RunConfig& c) { return static_cast<int>(c.integer_or("run.n_max", "32")); }
double tol_verdict(const RunConfig& c) { return c.real_or("run.tol_verdict", "1e-3"); }
double tol_residual(const RunConfig& c) { return c.real_or("run.tol_residual", "1e-5"); }
double ordering_step(const RunConfig& c) { return c.real_or("run.ordering_step", c.text("grid.step")); }
std::vector<int> sizes(const RunConfig& c) { return c.integers_or("run.sizes", "8, 12, 16"); }

struct GroundStage {
  GroundActionBracket bracket;
  NondegeneracyReport nd;
};

GroundStage ground_stage(const RunConfig& c, const InteractionModel& m, const Grid& g) {
  GroundStage s;
  s.bracket = bracket(m, g, n_max(c));
  s.nd = nondegeneracy_check(m, s.bracket, tol_verdict(c));
  return s;
}

Json bracket_with_verdict(const GroundStage& s) {
  Json j = bracket_json(s.bracket);
  j["verdict"] = to_string(s.nd.verdict);
  j["self_inf"] = s.nd.self_inf;
  j["verdict_margin"] = s.nd.margin;
  return j;
}

Json report(const std::string& command, const RunConfig& c, Json e_bar) {
  return {{"command", command}, {"config", config_json(c)}, {"e_bar", std::move(e_bar)}};
}

Json ordering_json(const OrderingReport& o) {
  return {{"epsilon", to_string(o.epsilon)}, {"sizes", o.sizes}, {"signs", o.signs}, {"rotations", o.rotations},
          {"n_emp", o.n_emp}};
}

RunConfig config_from_json(const Json& j) {
  std::string text;
  for (const auto& [k, v] : j.items()) text += k + " = " + v.get<std::string>() + "\n";
  return RunConfig::parse(text, "<embedded config>");
}

int cmd_substrate(Context& ctx) {
  const auto sub = build_substrate(ctx.cfg);
  CsvTable csv({"k", "q_k", "a_k"});
  for (std::int64_t k = sub->k_min(); k <= sub->k_max(); ++k) {
    csv.add_row(std::vector<double>{static_cast<double>(k), sub->point(k), static_cast<double>(sub->letter(k))});
  }
  Json j = report("substrate", ctx.cfg, nullptr);
  j["spec"] = {{"alpha", sub->spec().alpha}, {"rho", sub->spec().rho}};
  j["k_range"] = {sub->k_min(), sub->k_max()};
  j["range"] = {sub->range().lo, sub->range().hi};
  j["mu1_estimate"] = sub->subword_frequency("1");
  j["mu00_estimate"] = sub->subword_frequency("00");
  write_atomic(ctx.out / "substrate.csv", csv.str());
  write_atomic(ctx.out / "substrate.json", dump(j));
  ctx.os << "substrate: " << sub->points().size() << " points on [" << format_number(sub->range().lo) << ", "
         << format_number(sub->range().hi) << "], mu1 ~ " << format_number(j["mu1_estimate"].get<double>()) << "\n";
  return kOk;
}

int cmd_ground_action(Context& ctx) {
  const ModelBundle mb = build_model(ctx.cfg);
  const Grid g = build_grid(ctx.cfg);
  const GroundStage s = ground_stage(ctx.cfg, mb.model, g);
  const GroundActionBracket& b = s.bracket;
  CsvTable csv({"n", "lower", "upper", "chain_min", "cycle_min", "increment"});
  double lower = 0.0;
  double upper = b.ladder.value_or(std::numeric_limits<double>::infinity());
  for (const HistoryEntry& h : b.history) {
    lower = std::max(lower, h.chain_min - b.margin);
    upper = std::min(upper, h.cycle_min);
    csv.add_row(std::vector<double>{static_cast<double>(h.n), lower, upper, h.chain_min, h.cycle_min, h.increment});
  }
  Json j = report("ground-action", ctx.cfg, bracket_with_verdict(s));
  j["verdict"] = to_string(s.nd.verdict);
  j["gap"] = s.nd.gap;
  j["ladder_level"] = b.ladder_ell;
  j["ladder_threshold"] = ladder_threshold(mb.model.spec());
  j["node_increment"] = {b.node_increment_min, b.node_increment_max};
  write_atomic(ctx.out / "ground_action.csv", csv.str());
  write_atomic(ctx.out / "ground_action.json", dump(j));
  ctx.os << "ground-action: e_bar in [" << format_number(b.lower) << ", " << format_number(b.upper)
         << "], estimate " << format_number(b.estimate) << ", verdict " << to_string(s.nd.verdict) << "\n";
  return kOk;
}

int cmd_mane(Context& ctx) {
  const ModelBundle mb = build_model(ctx.cfg);
  const Grid g = build_grid(ctx.cfg);
  const GroundStage s = ground_stage(ctx.cfg, mb.model, g);
  const double ref = ctx.cfg.real_or("run.ref", "0");
  const ManeTable t = mane_table(mb.model, g, g.node(g.snap(ref)), s.bracket.estimate);

  CsvTable forward({"y", "S", "chain_length"});
  for (std::size_t i = t.ref_index; i < t.values.size(); ++i) {
    forward.add_row(std::vector<double>{g.node(i), t.values[i], static_cast<double>(t.chain_length[i])});
  }
  CsvTable backward({"y", "S", "chain_length"});
  for (std::size_t i = t.ref_index + 1; i-- > 0;) {
    backward.add_row(std::vector<double>{g.node(i), t.values[i], static_cast<double>(t.chain_length[i])});
  }

  Json j = report("mane", ctx.cfg, bracket_with_verdict(s));
  j["ref"] = t.ref;
  j["e_bar_used"] = t.e_bar_used;
  j["jump_radius"] = t.jump_radius;
  j["chains"] = {{"to_hi", t.chain_to(mb.model, g.hi()).points}, {"to_lo", t.chain_to(mb.model, g.lo()).points}};
  const OrderingReport ord =
      preferred_ordering(mb.model, ordering_step(ctx.cfg), sizes(ctx.cfg), s.nd.verdict, s.bracket.estimate);
  j["ordering"] = ordering_json(ord);
  const double fit = ctx.cfg.real_or("run.fit_fraction", "0.333333333333");
  try {
    const GrowthReport gr = growth_dichotomy(t, fit, ord.epsilon, mb.model.lambda());
    j["growth"] = {{"slope_ordered", gr.slope_ordered}, {"slope_anti", gr.slope_anti}, {"gamma", gr.gamma},
                   {"delta", gr.delta}};
  } catch (const ConfigurationError& e) {
    j["growth"] = {{"unavailable", e.what()}};
  }
  if (ord.epsilon != Ordering::undecided) {
    const Direction dir = ord.epsilon == Ordering::increasing ? Direction::increasing : Direction::decreasing;
    const Chain cal = calibrated_configuration(mb.model, g, dir, g.window(), s.bracket.estimate);
    const BoundsRecord br = estimate_bounds(mb.model, t, cal, ord);
    j["bounds"] = {{"eta0", br.eta0}, {"r", br.r}, {"R", br.R}, {"A", br.A}, {"B", br.B},
                   {"L", br.L},       {"phi", br.phi}, {"N", br.N}};
  }
  write_atomic(ctx.out / "mane_forward.csv", forward.str());
  write_atomic(ctx.out / "mane_backward.csv", backward.str());
  write_atomic(ctx.out / "mane.json", dump(j));
  ctx.os << "mane: S(ref, .) on " << g.size() << " nodes from ref " << format_number(t.ref) << ", e_bar "
         << format_number(t.e_bar_used) << ", S(ref, hi) " << format_number(t.values.back()) << "\n";
  return kOk;
}

int cmd_fundamental(Context& ctx) {
  const ModelBundle mb = build_model(ctx.cfg);
  const Grid g = build_grid(ctx.cfg);
  const GroundStage s = ground_stage(ctx.cfg, mb.model, g);
  Json list = Json::array();
  for (int n : sizes(ctx.cfg)) {
    const Fundamental f = fundamental_configuration(mb.model, g, n, s.bracket.estimate);
    list.push_back({{"n", n},
                    {"points", f.chain.points},
                    {"energy", f.chain.energy},
                    {"displacement", f.displacement},
                    {"rotation", f.rotation}});
  }
  const OrderingReport ord =
      preferred_ordering(mb.model, ordering_step(ctx.cfg), sizes(ctx.cfg), s.nd.verdict, s.bracket.estimate);
  Json j = report("fundamental", ctx.cfg, bracket_with_verdict(s));
  j["fundamentals"] = list;
  j["ordering"] = ordering_json(ord);
  write_atomic(ctx.out / "fundamental.json", dump(j));
  ctx.os << "fundamental: " << list.size() << " configurations, preferred ordering " << to_string(ord.epsilon)
         << "\n";
  return kOk;
}

Json verify_json(const VerifyReport& v) {
  return {{"subaction_violation", v.subaction_violation},
          {"calibration_residual", v.calibration_residual},
          {"c_star", v.c_star},
          {"lipschitz", v.lipschitz},
          {"lipschitz_apriori", v.lipschitz_apriori},
          {"periodicity_defect", v.periodicity_defect ? Json(*v.periodicity_defect) : Json()},
          {"interior_nodes", v.interior_nodes},
          {"passed", v.passed}};
}

Json classify_json(const ClassifyReport& r) {
  return {{"label", to_string(r.label)},
          {"slope_preceding", r.slope_preceding},
          {"slope_succeeding", r.slope_succeeding},
          {"precede_fraction", r.precede_fraction},
          {"succeed_fraction", r.succeed_fraction},
          {"transitions", r.transitions},
          {"flip_intervals", r.flip_intervals},
          {"flip_interval", {r.flip_interval.lo, r.flip_interval.hi}},
          {"flip_width", r.flip_width},
          {"growth_evidence", r.growth_evidence},
          {"direction_evidence", r.direction_evidence},
          {"diagnostic", r.diagnostic}};
}

Ordering parse_ordering(const std::string& s) {
  if (s == "+1") return Ordering::increasing;
  if (s == "-1") return Ordering::decreasing;
  return Ordering::undecided;
}

int cmd_kam(Context& ctx, const Options& o) {
  const ModelBundle mb = build_model(ctx.cfg);
  const InteractionModel& m = mb.model;
  const Grid g = build_grid(ctx.cfg);
  const SolutionType kind = parse_solution_type(o.type.empty() ? ctx.cfg.text_or("run.kind", "I") : o.type);
  if (!o.type.empty()) ctx.cfg.set("run.kind", o.type);

  const GroundStage s = ground_stage(ctx.cfg, m, g);
  const double e_bar = s.bracket.estimate;
  const OrderingReport ord = preferred_ordering(m, ordering_step(ctx.cfg), sizes(ctx.cfg), s.nd.verdict, e_bar);

  ClassifyOptions thresholds;
  if (ctx.cfg.has("run.theta_lin")) {
    thresholds.theta_lin = ctx.cfg.real("run.theta_lin");
  } else {
    const auto gw = ctx.cfg.reals_or("run.growth_window", ctx.cfg.text("grid.window"));
    if (gw.size() != 2) throw ConfigurationError("field 'run.growth_window' must be 'lo, hi'");
    const Grid growth_grid({gw[0], gw[1]}, g.step());
    const ManeTable t = mane_table(m, growth_grid, growth_grid.node(growth_grid.snap(0.0)), e_bar);
    const GrowthReport gr =
        growth_dichotomy(t, ctx.cfg.real_or("run.fit_fraction", "0.333333333333"), ord.epsilon, m.lambda());
    thresholds = thresholds_from_growth(gr);
  }
  if (ctx.cfg.has("run.theta_sub")) thresholds.theta_sub = ctx.cfg.real("run.theta_sub");

  BuildOptions bo;
  bo.fixed_point.tol = ctx.cfg.real_or("run.tol_fixed_point", "1e-8");
  bo.fixed_point.max_iter = static_cast<int>(ctx.cfg.integer_or("run.max_iter", "200000"));
  if (ctx.cfg.has("run.boundary_ref")) bo.boundary_ref = ctx.cfg.real("run.boundary_ref");
  const KamSolution u = build_solution(m, g.step(), kind, g.window(), e_bar, ord.epsilon, bo);
  const VerifyReport v = verify_weak_kam(m, u, tol_residual(ctx.cfg));
  const ClassifyReport cl = classify(m, u, ord.epsilon, thresholds);

  CsvTable csv({"x", "u"});
  for (std::size_t i = 0; i < u.values.size(); ++i) csv.add_row(std::vector<double>{u.grid.node(i), u.values[i]});
  Json j = report("kam", ctx.cfg, bracket_with_verdict(s));
  j["e_bar_used"] = u.e_bar_used;
  j["requested_type"] = to_string(kind);
  j["label"] = to_string(cl.label);
  j["epsilon"] = to_string(ord.epsilon);
  j["grid"] = {{"lo", u.grid.lo()}, {"hi", u.grid.hi()}, {"step", u.grid.step()}, {"nodes", u.grid.size()}};
  j["slopes"] = {{"left", u.slope_left}, {"right", u.slope_right}};
  j["residuals"] = {{"fixed_point", u.residual},
                    {"calibration", v.calibration_residual},
                    {"subaction", v.subaction_violation}};
  j["theta_lin"] = thresholds.theta_lin;
  j["theta_sub"] = thresholds.theta_sub.value_or(0.2 * thresholds.theta_lin);
  j["search_radius"] = u.search_radius;
  j["boundary_ref"] = u.boundary_ref;
  j["iterations"] = u.iterations;
  j["lip_estimate"] = u.lip_estimate;
  j["verify"] = verify_json(v);
  j["classify"] = classify_json(cl);
  write_atomic(ctx.out / "solution.csv", csv.str());
  write_atomic(ctx.out / "solution.json", dump(j));
  ctx.os << "kam: built type " << to_string(kind) << ", classified " << to_string(cl.label) << ", residual "
         << format_number(v.calibration_residual) << ", verify " << (v.passed ? "passed" : "failed") << "\n";
  return kOk;
}

struct StoredSolution {
  KamSolution solution;
  Json sidecar;
};

StoredSolution load_solution(const fs::path& prefix) {
  fs::path csv_path = prefix, json_path = prefix;
  csv_path += ".csv";
  json_path += ".json";
  StoredSolution s;
  s.sidecar = read_json(json_path);
  const CsvColumns csv = read_csv(csv_path);
  if (csv.header != std::vector<std::string>{"x", "u"}) {
    throw ConfigurationError(csv_path.string() + " must have columns x,u");
  }
  const Json& grid = s.sidecar.at("grid");
  const double step = grid.at("step").get<double>();
  const auto& x = csv.columns[0];
  if (x.size() < 3) throw ConfigurationError(csv_path.string() + " holds fewer than three nodes");
  KamSolution& u = s.solution;
  u.grid = Grid({grid.at("lo").get<double>(), grid.at("hi").get<double>()}, step);
  if (u.grid.size() != x.size()) throw ConfigurationError(csv_path.string() + " does not match its sidecar grid");
  u.values = csv.columns[1];
  u.e_bar_used = s.sidecar.at("e_bar_used").get<double>();
  u.search_radius = s.sidecar.at("search_radius").get<double>();
  u.boundary_ref = s.sidecar.at("boundary_ref").get<double>();
  u.epsilon_used = parse_ordering(s.sidecar.at("epsilon").get<std::string>());
  u.type_label = parse_solution_type(s.sidecar.at("label").get<std::string>());
  return s;
}

fs::path solution_prefix(const Context& ctx, const Options& o) {
  return o.solution.empty() ? ctx.out / "solution" : fs::path(o.solution);
}

int cmd_classify(Context& ctx, const Options& o, bool have_config) {
  StoredSolution s = load_solution(solution_prefix(ctx, o));
  if (!have_config) ctx.cfg = config_from_json(s.sidecar.at("config"));
  const ModelBundle mb = build_model(ctx.cfg);
  attach_argmin(mb.model, s.solution);
  ClassifyOptions opt;
  opt.theta_lin = s.sidecar.at("theta_lin").get<double>();
  opt.theta_sub = s.sidecar.at("theta_sub").get<double>();
  const ClassifyReport cl = classify(mb.model, s.solution, s.solution.epsilon_used, opt);
  Json j = report("classify", ctx.cfg, s.sidecar.at("e_bar"));
  j["e_bar_used"] = s.solution.e_bar_used;
  j["stored_label"] = s.sidecar.at("label");
  j["classify"] = classify_json(cl);
  j["label"] = to_string(cl.label);
  write_atomic(ctx.out / "classify.json", dump(j));
  ctx.os << "classify: label " << to_string(cl.label) << "\n";
  return kOk;
}

int cmd_verify(Context& ctx, const Options& o, bool have_config) {
  StoredSolution s = load_solution(solution_prefix(ctx, o));
  if (!have_config) ctx.cfg = config_from_json(s.sidecar.at("config"));
  const ModelBundle mb = build_model(ctx.cfg);
  const VerifyReport v = verify_weak_kam(mb.model, s.solution, tol_residual(ctx.cfg));
  Json j = report("verify", ctx.cfg, s.sidecar.at("e_bar"));
  j["e_bar_used"] = s.solution.e_bar_used;
  j["verify"] = verify_json(v);
  write_atomic(ctx.out / "verify.json", dump(j));
  ctx.os << "verify: " << (v.passed ? "passed" : "failed") << ", calibration residual "
         << format_number(v.calibration_residual) << ", c* " << format_number(v.c_star) << "\n";
  return kOk;
}

int cmd_sweep(Context& ctx) {
  const ModelBundle mb = build_model(ctx.cfg);
  const Grid g = build_grid(ctx.cfg);
  SweepOptions opt;
  opt.n_max = n_max(ctx.cfg);
  opt.tol_verdict = tol_verdict(ctx.cfg);
  opt.sizes = sizes(ctx.cfg);
  opt.ordering_step = ordering_step(ctx.cfg);
  const auto lambdas = ctx.cfg.reals_or("run.lambdas", "-1, -0.5, -0.02, 0, 0.02, 0.5, 1");
  const SweepReport rep = lambda_sweep(mb.model, lambdas, g, opt);

  CsvTable csv({"lambda", "lower", "upper", "self_inf", "verdict", "epsilon"});
  Json records = Json::array();
  for (const SweepRecord& r : rep.records) {
    csv.add_row(std::vector<std::string>{format_number(r.lambda), format_number(r.lower), format_number(r.upper),
                                         format_number(r.self_inf), to_string(r.verdict), to_string(r.epsilon)});
    records.push_back({{"lambda", r.lambda},
                       {"lower", r.lower},
                       {"upper", r.upper},
                       {"estimate", r.estimate},
                       {"self_inf", r.self_inf},
                       {"verdict", to_string(r.verdict)},
                       {"epsilon", to_string(r.epsilon)}});
  }
  Json j = report("sweep", ctx.cfg, records);
  j["records"] = records;
  const auto finite_or_null = [](double v) { return std::isnan(v) ? Json() : Json(v); };
  j["lambda_plus_est"] = finite_or_null(rep.lambda_plus_est);
  j["lambda_minus_est"] = finite_or_null(rep.lambda_minus_est);
  write_atomic(ctx.out / "sweep.csv", csv.str());
  write_atomic(ctx.out / "sweep.json", dump(j));
  ctx.os << "sweep: " << rep.records.size() << " drifts, lambda_minus_est " << format_number(rep.lambda_minus_est)
         << ", lambda_plus_est " << format_number(rep.lambda_plus_est) << "\n";
  return kOk;
}

int cmd_recipe(const Options& o, std::uint64_t seed, std::ostream& out, std::ostream& err) {
  if (!has_recipe(o.recipe)) {
    err << "kamlab: unknown recipe '" << o.recipe << "'; available:";
    for (const auto& n : recipe_names()) err << " " << n;
    err << "\n";
    return kUsage;
  }
  const RecipeResult r = run_recipe(o.recipe, seed);
  for (const RecipeCheck& c : r.checks) {
    out << "  " << (c.passed ? "ok  " : "FAIL") << " " << c.name << ": " << format_number(c.value) << " "
        << c.relation << " " << format_number(c.limit) << "\n";
  }
  if (!o.out.empty()) write_atomic(fs::path(o.out) / ("recipe_" + r.name + ".json"), dump(r.to_json()));
  out << r.name << ": " << (r.passed() ? "PASS" : "FAIL") << " (" << r.description << ")\n";
  return r.passed() ? kOk : kFailed;
}

std::uint64_t parse_seed(const std::string& s) {
  std::uint64_t v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw ConfigurationError("--seed must be a non-negative integer, got '" + s + "'");
  }
  return v;
}

int dispatch(const std::string& command, const Options& o, std::ostream& out) {
  if (o.threads < 0) throw ConfigurationError("--threads must be >= 0");
  set_thread_count(o.threads);
  const bool have_config = !o.config.empty();
  const bool config_optional = command == "classify" || command == "verify";
  if (!have_config && !config_optional) throw ConfigurationError("missing required option --config");
  RunConfig cfg = have_config ? RunConfig::load(o.config) : RunConfig{};
  if (!o.seed.empty()) cfg.set("run.seed", std::to_string(parse_seed(o.seed)));
  const fs::path out_dir = !o.out.empty() ? fs::path(o.out) : fs::path(cfg.text_or("run.out", "."));
  Context ctx{std::move(cfg), out_dir, out};
  if (command == "substrate") return cmd_substrate(ctx);
  if (command == "ground-action") return cmd_ground_action(ctx);
  if (command == "mane") return cmd_mane(ctx);
  if (command == "fundamental") return cmd_fundamental(ctx);
  if (command == "kam") return cmd_kam(ctx, o);
  if (command == "classify") return cmd_classify(ctx, o, have_config);
  if (command == "verify") return cmd_verify(ctx, o, have_config);
  if (command == "sweep") return cmd_sweep(ctx);
  throw std::logic_error("unhandled subcommand " + command);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Weak KAM solutions and ground actions for Frenkel-Kontorova chains", "kamlab"};
  app.require_subcommand(1, 1);
  Options o;

  const auto common = [&](CLI::App* s) {
    s->add_option("--config", o.config, "Run configuration file");
    s->add_option("--out", o.out, "Output directory (default: run.out or .)");
    s->add_option("--threads", o.threads, "Worker threads, 0 for the runtime default");
    s->add_option("--seed", o.seed, "Seed recorded as run.seed and used by sampling recipes");
  };
  const std::vector<std::pair<std::string, std::string>> commands{
      {"substrate", "Generate the substrate points and word"},
      {"ground-action", "Bracket the ground action and decide degeneracy"},
      {"mane", "Single-source Mane potential table"},
      {"fundamental", "Free-endpoint minimizers and the preferred ordering"},
      {"kam", "Build, verify and classify one weak KAM solution"},
      {"classify", "Classify a stored solution"},
      {"verify", "Verify a stored solution"},
      {"sweep", "Degeneracy and ordering across drifts"},
  };
  for (const auto& [name, help] : commands) {
    CLI::App* s = app.add_subcommand(name, help);
    common(s);
    if (name == "kam") s->add_option("--type", o.type, "Solution kind I, II or III (default run.kind)");
    if (name == "classify" || name == "verify") {
      s->add_option("--solution", o.solution, "Path prefix of the stored solution (default OUT/solution)");
    }
  }
  CLI::App* recipe = app.add_subcommand("recipe", "Run a named acceptance recipe");
  recipe->add_option("name", o.recipe, "Recipe name (AC0-smoke, AC1 ... AC12)")->required();
  recipe->add_option("--out", o.out, "Directory for the recipe JSON report");
  recipe->add_option("--threads", o.threads, "Worker threads");
  recipe->add_option("--seed", o.seed, "Seed for sampled recipes");

  std::vector<std::string> argv_store{"kamlab"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "kamlab: " << e.what() << "\n" << app.help();
    return kUsage;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    if (command == "recipe") {
      if (o.threads < 0) throw ConfigurationError("--threads must be >= 0");
      set_thread_count(o.threads);
      return cmd_recipe(o, o.seed.empty() ? kDefaultSeed : parse_seed(o.seed), out, err);
    }
    return dispatch(command, o, out);
  } catch (const NonConvergence& e) {
    err << "kamlab: non-convergence: " << e.what() << " (residual " << format_number(e.residual()) << ")\n";
    return kNonConvergence;
  } catch (const NumericalInconsistency& e) {
    err << "kamlab: numerical inconsistency: " << e.what() << "\n";
    return kNumericalInconsistency;
  } catch (const Error& e) {
    err << "kamlab: error: " << e.what() << "\n";
    return kConfigError;
  } catch (const Json::exception& e) {
    err << "kamlab: error: malformed stored solution: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    err << "kamlab: internal error: " << e.what() << "\n";
    return kFailed;
  }
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace kamlab::cli
