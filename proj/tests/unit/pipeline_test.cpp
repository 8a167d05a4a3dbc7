// Copyright (c) 2026 The bhcalc Authors.
// SPDX-License-Identifier: Apache-2.0

#include "bhcalc/pipeline.hpp"

#include "doctest.h"

using namespace bhcalc;

TEST_CASE("small pipeline run is clean and deterministic") {
  PipelineConfig cfg = PipelineConfig::defaults();
  cfg.depth = 1;
  cfg.walks = 12;
  cfg.walk_depth = 6;
  cfg.breadth_depth = 2;
  cfg.seed = 42;

  PipelineResult r1 = run_pipeline(cfg);
  CHECK(r1.basic_root.end_sequent_empty);
  CHECK(r1.elim_root.end_sequent_empty);
  CHECK(r1.elim_root.cut_rank == 2);
  CHECK(r1.collapsed_root.end_sequent_empty);
  CHECK(r1.collapsed_root.cut_rank == 1);
  CHECK(r1.collapsed_below_omega);
  CHECK(r1.collapsed_height_matches);
  CHECK(r1.theta_map_consistent);
  CHECK(r1.total_fails() == 0);

  PipelineResult r2 = run_pipeline(cfg);
  CHECK(pipeline_report_json(r1) == pipeline_report_json(r2));
}

TEST_CASE("config validation") {
  PipelineConfig cfg = PipelineConfig::defaults();
  cfg.depth = 5;
  CHECK_THROWS_AS(run_pipeline(cfg), Error);
  cfg = PipelineConfig::defaults();
  cfg.e_iterations = 2;
  CHECK_THROWS_AS(run_pipeline(cfg), Error);
  cfg = PipelineConfig::defaults();
  cfg.alpha = 1;
  CHECK_THROWS_AS(run_pipeline(cfg), Error);
}
