#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kamlab/mane.hpp"
#include "kamlab/model.hpp"
#include "kamlab_cli/io.hpp"

namespace kamlab::cli {

inline constexpr std::uint64_t kDefaultSeed = 20240917;

struct RecipeCheck {
  std::string name;
  double value = 0.0;
  std::string relation;  // "<=", ">=", "==", "is"
  double limit = 0.0;
  bool passed = false;
};

struct RecipeResult {
  std::string name;
  std::string description;
  std::vector<RecipeCheck> checks;
  Json details = Json::object();

  bool passed() const;
  Json to_json() const;
};

const std::vector<std::string>& recipe_names();
bool has_recipe(const std::string& name);
// Throws std::out_of_range for an unknown name.
RecipeResult run_recipe(const std::string& name, std::uint64_t seed = kDefaultSeed);

// Minimum of the summed reduced energy over every monotone chain between two
// grid nodes, enumerated exhaustively and summed from the first bond on.
double enumerate_monotone_minimum(const InteractionModel& m, const Grid& g, std::size_t from, std::size_t to,
                                  double e_bar);

}  // namespace kamlab::cli
