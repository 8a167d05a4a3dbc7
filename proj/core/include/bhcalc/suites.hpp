// Copyright (c) 2026 The bhcalc Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef BHCALC_SUITES_HPP
#define BHCALC_SUITES_HPP

#include <string>
#include <vector>

namespace bhcalc {

struct SuiteOptions {
  std::string golden_dir = "tests/golden";
  uint64_t seed = 0;
  uint64_t fuel = 10000;
};

struct CriterionResult {
  int criterion = 0;
  bool pass = false;
  double seconds = 0;
  std::string summary;
  std::vector<std::string> details;
};

// Runs one acceptance criterion (1..9) at its stated tolerance.
CriterionResult run_criterion(int criterion, const SuiteOptions& opt);

struct SuiteResult {
  std::string name;
  bool pass = false;
  std::vector<CriterionResult> parts;
};

// Suites: ordinal-laws, eps-laws, collapse, search-tree-golden, codes-local,
// pipeline. Throws UnknownSuite for anything else.
SuiteResult run_suite(const std::string& name, const SuiteOptions& opt);
std::vector<std::string> suite_names();

// The search-tree dump used by the golden files (breadth-first to `depth`).
std::string search_tree_dump(unsigned stage_alpha, unsigned build_depth, unsigned dump_depth);

}  // namespace bhcalc

#endif  // BHCALC_SUITES_HPP
