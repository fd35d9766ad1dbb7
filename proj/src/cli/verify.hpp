#pragma once

#include <string>
#include <vector>

namespace malle::cli {

struct CaseResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

// Suites: mblocal, mobius, burnside, sieve. Cases whose name does not
// contain `filter` are skipped.
std::vector<CaseResult> verify_suite(const std::string& suite, const std::string& filter);

}  // namespace malle::cli
