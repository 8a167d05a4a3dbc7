// Copyright (c) 2026 The bhcalc Authors.
// SPDX-License-Identifier: Apache-2.0
//
// The acceptance gate: runs every criterion at its stated tolerance and
// prints one pass/fail line per criterion.

#include <cstdio>
#include <cstring>
#include <string>

#include "bhcalc/suites.hpp"

int main(int argc, char** argv) {
  std::string golden_dir = "tests/golden";
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (!std::strcmp(argv[i], "--golden-dir") && i + 1 < argc) golden_dir = argv[++i];
    if (!std::strcmp(argv[i], "--criterion") && i + 1 < argc) only = std::atoi(argv[++i]);
  }
  bhcalc::SuiteOptions opt;
  opt.golden_dir = golden_dir;

  bool all_pass = true;
  for (int k = 1; k <= 9; ++k) {
    if (only && k != only) continue;
    bhcalc::CriterionResult r = bhcalc::run_criterion(k, opt);
    std::printf("[%s] criterion %d: %s (%.2fs)\n", r.pass ? "PASS" : "FAIL", k,
                r.summary.c_str(), r.seconds);
    for (const auto& line : r.details) std::printf("        %s\n", line.c_str());
    all_pass = all_pass && r.pass;
  }
  return all_pass ? 0 : 1;
}
