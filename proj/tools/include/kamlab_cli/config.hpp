#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "kamlab/grid.hpp"
#include "kamlab/model.hpp"

namespace kamlab::cli {

// Flat `section.key = value` file. Sections: substrate, model, grid, run.
// Numbers must be plain decimal literals; their text is kept verbatim so a
// resolved config reproduces the input exactly.
class RunConfig {
 public:
  static RunConfig parse(std::string_view text, const std::string& source = "<config>");
  static RunConfig load(const std::filesystem::path& path);

  bool has(const std::string& key) const { return entries_.count(key) != 0; }
  void set(const std::string& key, const std::string& value);

  // Required lookups throw ConfigurationError naming the missing key.
  const std::string& text(const std::string& key) const;
  double real(const std::string& key) const;
  std::int64_t integer(const std::string& key) const;
  std::vector<double> reals(const std::string& key) const;
  std::vector<int> integers(const std::string& key) const;

  // Defaulted lookups record the default in the resolved view.
  std::string text_or(const std::string& key, const std::string& fallback) const;
  double real_or(const std::string& key, const std::string& fallback) const;
  std::int64_t integer_or(const std::string& key, const std::string& fallback) const;
  std::vector<int> integers_or(const std::string& key, const std::string& fallback) const;
  std::vector<double> reals_or(const std::string& key, const std::string& fallback) const;

  // Entries given in the file plus every default consulted so far.
  std::map<std::string, std::string> resolved() const;
  std::string serialize() const;

 private:
  std::map<std::string, std::string> entries_;
  mutable std::map<std::string, std::string> defaults_;
};

double parse_decimal(std::string_view text, const std::string& key);

struct ModelBundle {
  InteractionModel model;
  std::shared_ptr<const Substrate> substrate;  // null for the periodic family
};

ModelBundle build_model(const RunConfig& c);
std::shared_ptr<const Substrate> build_substrate(const RunConfig& c);
Grid build_grid(const RunConfig& c);

}  // namespace kamlab::cli
