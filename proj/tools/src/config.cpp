#include "kamlab_cli/config.hpp"

#include <charconv>
#include <fstream>
#include <regex>
#include <sstream>

#include "kamlab/error.hpp"

namespace kamlab::cli {

namespace {

const std::regex kDecimal(R"([+-]?(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?)");
const std::regex kKey(R"((substrate|model|grid|run)\.[A-Za-z0-9_]+)");

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::int64_t parse_integer(const std::string& text, const std::string& key) {
  std::int64_t v = 0;
  const auto* end = text.data() + text.size();
  const auto res = std::from_chars(text.data() + (text.starts_with('+') ? 1 : 0), end, v);
  if (res.ec != std::errc() || res.ptr != end) {
    throw ConfigurationError("field '" + key + "' must be an integer, got '" + text + "'");
  }
  return v;
}

}  // namespace

double parse_decimal(std::string_view text, const std::string& key) {
  const std::string s(text);
  if (!std::regex_match(s, kDecimal)) {
    throw ConfigurationError("field '" + key + "' must be a decimal literal, got '" + s + "'");
  }
  double v = 0.0;
  const char* begin = s.data() + (s.starts_with('+') ? 1 : 0);
  const auto res = std::from_chars(begin, s.data() + s.size(), v);
  if (res.ec != std::errc()) throw ConfigurationError("field '" + key + "' is out of range: '" + s + "'");
  return v;
}

RunConfig RunConfig::parse(std::string_view text, const std::string& source) {
  RunConfig c;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    const std::string body = trim(hash == std::string::npos ? line : line.substr(0, hash));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    const std::string where = source + ":" + std::to_string(lineno);
    if (eq == std::string::npos) throw ConfigurationError(where + ": expected 'section.key = value'");
    const std::string key = trim(body.substr(0, eq));
    const std::string value = trim(body.substr(eq + 1));
    if (!std::regex_match(key, kKey)) {
      throw ConfigurationError(where + ": key '" + key + "' must be substrate.*, model.*, grid.* or run.*");
    }
    if (c.entries_.count(key)) throw ConfigurationError(where + ": duplicate key '" + key + "'");
    c.entries_[key] = value;
  }
  return c;
}

RunConfig RunConfig::load(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw ConfigurationError("cannot read config file " + path.string());
  std::stringstream ss;
  ss << f.rdbuf();
  return parse(ss.str(), path.string());
}

void RunConfig::set(const std::string& key, const std::string& value) {
  if (!std::regex_match(key, kKey)) throw ConfigurationError("invalid config key '" + key + "'");
  entries_[key] = value;
}

const std::string& RunConfig::text(const std::string& key) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) throw ConfigurationError("missing required field '" + key + "'");
  return it->second;
}

double RunConfig::real(const std::string& key) const { return parse_decimal(text(key), key); }

std::int64_t RunConfig::integer(const std::string& key) const { return parse_integer(text(key), key); }

std::vector<double> RunConfig::reals(const std::string& key) const {
  std::vector<double> out;
  for (const auto& s : split_list(text(key))) out.push_back(parse_decimal(s, key));
  return out;
}

std::vector<int> RunConfig::integers(const std::string& key) const {
  std::vector<int> out;
  for (const auto& s : split_list(text(key))) out.push_back(static_cast<int>(parse_integer(s, key)));
  return out;
}

std::string RunConfig::text_or(const std::string& key, const std::string& fallback) const {
  if (has(key)) return text(key);
  defaults_[key] = fallback;
  return fallback;
}

double RunConfig::real_or(const std::string& key, const std::string& fallback) const {
  return parse_decimal(text_or(key, fallback), key);
}

std::int64_t RunConfig::integer_or(const std::string& key, const std::string& fallback) const {
  return parse_integer(text_or(key, fallback), key);
}

std::vector<int> RunConfig::integers_or(const std::string& key, const std::string& fallback) const {
  std::vector<int> out;
  for (const auto& s : split_list(text_or(key, fallback))) out.push_back(static_cast<int>(parse_integer(s, key)));
  return out;
}

std::vector<double> RunConfig::reals_or(const std::string& key, const std::string& fallback) const {
  std::vector<double> out;
  for (const auto& s : split_list(text_or(key, fallback))) out.push_back(parse_decimal(s, key));
  return out;
}

std::map<std::string, std::string> RunConfig::resolved() const {
  std::map<std::string, std::string> out = defaults_;
  for (const auto& [k, v] : entries_) out[k] = v;
  return out;
}

std::string RunConfig::serialize() const {
  std::string s;
  for (const auto& [k, v] : resolved()) s += k + " = " + v + "\n";
  return s;
}

std::shared_ptr<const Substrate> build_substrate(const RunConfig& c) {
  const SubstrateSpec spec{c.real("substrate.alpha"), c.real("substrate.rho")};
  const auto range = c.integers("substrate.k_range");
  if (range.size() != 2 || range[0] >= range[1]) {
    throw ConfigurationError("field 'substrate.k_range' must be 'k_min, k_max' with k_min < k_max");
  }
  return std::make_shared<const Substrate>(Substrate::generate(spec, range[0], range[1]));
}

ModelBundle build_model(const RunConfig& c) {
  const std::string family = c.text("model.family");
  const double lambda = c.real("model.lambda");
  const double coupling = c.real("model.K");
  if (family == "fk_periodic") return {InteractionModel::periodic(lambda, coupling), nullptr};
  if (family == "fk_quasiperiodic") {
    auto sub = build_substrate(c);
    return {InteractionModel::quasiperiodic(lambda, coupling, sub), sub};
  }
  throw ConfigurationError("field 'model.family' must be fk_periodic or fk_quasiperiodic, got '" + family + "'");
}

Grid build_grid(const RunConfig& c) {
  const auto window = c.reals("grid.window");
  const double step = c.real("grid.step");
  if (window.size() != 2) throw ConfigurationError("field 'grid.window' must be 'lo, hi'");
  if (!(step > 0.0)) throw ConfigurationError("field 'grid.step' must be positive");
  if (!(window[1] - window[0] >= 2.0 * step)) throw ConfigurationError("field 'grid.window' must span two steps");
  return Grid({window[0], window[1]}, step);
}

}  // namespace kamlab::cli
