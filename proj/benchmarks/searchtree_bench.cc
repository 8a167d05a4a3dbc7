// Copyright (c) 2026 The bhcalc Authors.
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include "bhcalc/searchtree.hpp"

namespace {

using namespace bhcalc;

void BM_StageBuild(benchmark::State& state) {
  for (auto _ : state) {
    StageUniverse u = StageUniverse::build({HFSet::numeral(0), HFSet::numeral(1)},
                                           static_cast<unsigned>(state.range(0)));
    benchmark::DoNotOptimize(u.stage(static_cast<unsigned>(state.range(0))).size());
  }
}
BENCHMARK(BM_StageBuild)->Arg(1)->Arg(2);

void BM_TreeExpand(benchmark::State& state) {
  StageUniverse u = StageUniverse::build({HFSet::numeral(0), HFSet::numeral(1)}, 2);
  for (auto _ : state) {
    SearchTree t(u, 2);  // fresh memo each round
    size_t nodes = 0;
    std::vector<Path> queue = {{}};
    for (size_t i = 0; i < queue.size() && nodes < 64; ++i) {
      if (queue[i].size() >= 8) continue;  // the witness pool is finite
      for (auto& [a, lab] : t.expand(queue[i])) {
        Path q = queue[i];
        q.push_back(a);
        queue.push_back(std::move(q));
        ++nodes;
      }
    }
    benchmark::DoNotOptimize(nodes);
  }
}
BENCHMARK(BM_TreeExpand);

}  // namespace
