// Runs every acceptance criterion and prints one PASS/FAIL line per criterion.
// Exit status is 0 only if all criteria pass within their time budgets.

#include <cstdio>
#include <iostream>

#include "padic/suite.hpp"

int main(int argc, char** argv) {
  const std::string filter = argc > 1 ? argv[1] : "";
  bool all = true;
  int count = 0;
  for (const auto& criterion : padic::acceptance_criteria()) {
    if (!filter.empty() && criterion.key.find(filter) == std::string::npos) continue;
    const auto r = padic::run_suite(criterion.key, 42).front();
    char timing[64];
    if (r.limit_seconds > 0)
      std::snprintf(timing, sizeof timing, "%.2f s, budget %.0f s", r.seconds, r.limit_seconds);
    else
      std::snprintf(timing, sizeof timing, "%.2f s", r.seconds);
    std::cout << (r.pass() ? "[PASS] " : "[FAIL] ") << r.id << " " << r.key << ": " << r.summary << " (" << timing << ")"
              << std::endl;
    all = all && r.pass();
    ++count;
  }
  std::cout << (all ? "all " : "not all ") << count << " criteria passed" << std::endl;
  return all ? 0 : 1;
}
