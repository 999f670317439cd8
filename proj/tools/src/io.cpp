#include "kamlab_cli/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>

#include <unistd.h>

#include "kamlab/error.hpp"

namespace kamlab::cli {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v == 0.0 ? 0.0 : v);  // no "-0"
  return buf;
}

CsvTable::CsvTable(std::vector<std::string> header) : width_(header.size()) {
  add_row(header);
}

void CsvTable::add_row(const std::vector<double>& row) {
  std::vector<std::string> cells;
  cells.reserve(row.size());
  for (double v : row) cells.push_back(format_number(v));
  add_row(cells);
}

void CsvTable::add_row(const std::vector<std::string>& row) {
  if (row.size() != width_) throw Error("csv row width mismatch");
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i) text_ += ',';
    text_ += row[i];
  }
  text_ += '\n';
}

std::string CsvTable::str() const { return text_; }

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  namespace fs = std::filesystem;
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw ConfigurationError("cannot write " + tmp.string());
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    f.flush();
    if (!f) throw ConfigurationError("failed writing " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp);
    throw ConfigurationError("cannot rename onto " + path.string() + ": " + ec.message());
  }
}

Json config_json(const RunConfig& c) {
  Json j = Json::object();
  for (const auto& [k, v] : c.resolved()) j[k] = v;
  return j;
}

Json bracket_json(const GroundActionBracket& b) {
  return Json{{"lower", b.lower},   {"upper", b.upper},  {"estimate", b.estimate},
              {"margin", b.margin}, {"torus", b.torus}, {"ladder", b.ladder ? Json(*b.ladder) : Json()}};
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

CsvColumns read_csv(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw ConfigurationError("cannot read " + path.string());
  CsvColumns out;
  std::string line;
  if (!std::getline(f, line)) throw ConfigurationError(path.string() + " is empty");
  {
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.header.push_back(cell);
  }
  out.columns.assign(out.header.size(), {});
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    std::size_t i = 0;
    while (std::getline(ss, cell, ',')) {
      if (i >= out.columns.size()) throw ConfigurationError(path.string() + ": row wider than header");
      out.columns[i++].push_back(std::stod(cell));
    }
    if (i != out.columns.size()) throw ConfigurationError(path.string() + ": row narrower than header");
  }
  return out;
}

Json read_json(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw ConfigurationError("cannot read " + path.string());
  try {
    return Json::parse(f);
  } catch (const Json::exception& e) {
    throw ConfigurationError(path.string() + ": " + e.what());
  }
}

}  // namespace kamlab::cli
