// Copyright (c) 2026 The bhcalc Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef BHCALC_PIPELINE_HPP
#define BHCALC_PIPELINE_HPP

#include <memory>
#include <string>
#include <vector>

#include "bhcalc/proofcode.hpp"

namespace bhcalc {

struct PipelineConfig {
  std::vector<HFSet> u;         // default: transitive closure of {1} = {0, 1}
  unsigned depth = 2;           // stage depth n (<= 4 by contract, <= 3 in practice)
  unsigned alpha = 2;           // ambient term-system index (>= 2)
  unsigned e_iterations = 6;    // C, with d(E^C basic) = max{2, d - C}
  unsigned walks = 200;
  unsigned walk_depth = 8;
  unsigned breadth_depth = 3;
  uint64_t fuel = 10000;
  uint64_t seed = 0;

  void validate() const;
  static PipelineConfig defaults();
};

struct NodeReport {
  std::string stage;   // which code family the node belongs to
  std::string path;
  std::string rule;
  std::string height;
  std::vector<ProofSystem::Condition> verdicts;
  bool edge_ok = true;  // height decreased along the edge that reached it
};

struct VerifySummary {
  size_t nodes = 0;
  size_t conditions = 0;
  size_t fails = 0;
  size_t unknowns = 0;
  size_t edge_violations = 0;
  std::vector<NodeReport> reports;  // sorted by path
};

// Breadth-exhaustive traversal to breadth_depth plus seeded random walks to
// walk_depth; a query pre-pass feeds the theta oracle in ascending order
// before any checking happens, so later lookups hit a frozen map.
VerifySummary verify_code(ProofSystem& sys, GreedyThetaOracle& oracle, CodeId root,
                          const std::string& stage_name, const PipelineConfig& cfg);

struct RootSummary {
  std::string code;
  std::string end_sequent;
  std::string height;
  unsigned cut_rank = 0;
  std::string h0;
  std::string h1;
  bool end_sequent_empty = false;
};

struct PipelineResult {
  RootSummary basic_root, elim_root, collapsed_root;
  VerifySummary basic_run, elim_run, collapsed_run;
  bool collapsed_height_matches = false;  // o = theta(Omega + W^(eps_<>))
  bool collapsed_below_omega = false;
  bool theta_map_consistent = false;      // check_bh on the accumulated map
  size_t total_fails() const;
  size_t total_unknowns() const;
};

// Builds Basic(<>), applies E C times, applies C_Omega with the greedy
// oracle, and verifies all three stages node-wise.
PipelineResult run_pipeline(const PipelineConfig& cfg);

std::string pipeline_report_json(const PipelineResult& r);
std::string pipeline_report_text(const PipelineResult& r);

}  // namespace bhcalc

#endif  // BHCALC_PIPELINE_HPP
