// Copyright (c) 2026 The bhcalc Authors.
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include "bhcalc/collapse.hpp"

namespace {

using namespace bhcalc;

void BM_CsetSaturation(benchmark::State& state) {
  SyntheticBase base({OrdCNF(0), OrdCNF(1), OrdCNF(2), OrdCNF::omega(),
                      OrdCNF::omega() + OrdCNF(1), OrdCNF::omega_times(2)});
  FiniteWop T;
  for (int i = 0; i < 6; ++i) {
    T.names.push_back(std::to_string(i));
    T.ranks.push_back(base.rank(i));
  }
  WopCollapse th = synthesize_collapse(T);
  TermCollapse theta(base);
  for (int i = 0; i < 6; ++i) theta.insert(EpsTerm::eps(i), th.values[i]);
  for (auto _ : state) {
    CsetEngine eng(theta, EpsTerm::eps(5), CsetSeed{{OrdCNF(3)}, std::nullopt}, 10000);
    benchmark::DoNotOptimize(eng.member_ord(OrdCNF::omega()));
  }
}
BENCHMARK(BM_CsetSaturation);

void BM_GreedyOracle(benchmark::State& state) {
  SyntheticBase base({OrdCNF(0), OrdCNF(1), OrdCNF(2), OrdCNF::omega()});
  OrdCNF alpha(3);
  for (auto _ : state) {
    GreedyThetaOracle oracle(base);
    std::vector<EpsTerm> batch;
    for (int i = 0; i < 4; ++i)
      for (int n = 0; n < 4; ++n)
        batch.push_back(eps_add(eps_Omega(), eps_tower(static_cast<unsigned>(n), EpsTerm::eps(i)),
                                alpha, base));
    oracle.assign_ascending(batch);
    benchmark::DoNotOptimize(oracle.map().size());
  }
}
BENCHMARK(BM_GreedyOracle);

}  // namespace
