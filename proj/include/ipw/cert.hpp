#pragma once
#include <string>
#include <vector>

namespace ipw {

// One verified statement: what was expected, what was observed.
struct Check {
  std::string id;
  std::string expected;
  std::string observed;
  bool pass = false;
};

inline Check make_check(std::string id, bool pass, std::string expected = "", std::string observed = "") {
  return Check{std::move(id), std::move(expected), std::move(observed), pass};
}

inline bool all_pass(const std::vector<Check>& cs) {
  for (const auto& c : cs)
    if (!c.pass) return false;
  return true;
}

}  // namespace ipw
