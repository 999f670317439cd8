// Runs every acceptance recipe and the property suite; one line per criterion.

#include <chrono>
#include <cstdio>
#include <exception>
#include <string>

#include "kamlab_cli/recipes.hpp"
#include "properties.hpp"

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main() {
  int failed = 0;
  for (const std::string& name : kamlab::cli::recipe_names()) {
    const auto t0 = std::chrono::steady_clock::now();
    try {
      const kamlab::cli::RecipeResult r = kamlab::cli::run_recipe(name);
      std::printf("%-10s %s  (%.2fs) %s\n", name.c_str(), r.passed() ? "PASS" : "FAIL", seconds_since(t0),
                  r.description.c_str());
      if (!r.passed()) {
        ++failed;
        for (const auto& c : r.checks) {
          if (!c.passed) std::printf("    %s: %.6g %s %.6g\n", c.name.c_str(), c.value, c.relation.c_str(), c.limit);
        }
      }
    } catch (const std::exception& e) {
      std::printf("%-10s FAIL  (%.2fs) %s\n", name.c_str(), seconds_since(t0), e.what());
      ++failed;
    }
  }
  const auto t0 = std::chrono::steady_clock::now();
  const auto outcomes = properties::run_all();
  bool all = true;
  for (const auto& o : outcomes) {
    std::printf("    property %-38s %s  %d cases, worst %.3g%s%s\n", o.name.c_str(), o.passed() ? "pass" : "fail",
                o.cases, o.worst, o.passed() ? "" : ", first: ", o.first_failure.c_str());
    all = all && o.passed();
  }
  std::printf("%-10s %s  (%.2fs) %zu properties x %d seeded cases\n", "PROPERTIES", all ? "PASS" : "FAIL",
              seconds_since(t0), outcomes.size(), properties::kCases);
  if (!all) ++failed;
  std::printf("%d criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
