#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "kamlab/ground_action.hpp"
#include "kamlab_cli/config.hpp"

namespace kamlab::cli {

using Json = nlohmann::json;  // std::map-backed, so keys serialize sorted

// 12 significant digits; NaN and infinities as "nan", "inf", "-inf".
std::string format_number(double v);

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);
  void add_row(const std::vector<double>& row);
  void add_row(const std::vector<std::string>& row);
  std::string str() const;  // LF line endings, header first

 private:
  std::size_t width_;
  std::string text_;
};

// Writes to a sibling temporary file and renames it over `path`.
void write_atomic(const std::filesystem::path& path, const std::string& content);

Json config_json(const RunConfig& c);
Json bracket_json(const GroundActionBracket& b);
std::string dump(const Json& j);  // two-space indent, trailing LF

struct CsvColumns {
  std::vector<std::string> header;
  std::vector<std::vector<double>> columns;
};

CsvColumns read_csv(const std::filesystem::path& path);
Json read_json(const std::filesystem::path& path);

}  // namespace kamlab::cli
