// Copyright 2026 The Bohatei Sim Authors. All rights reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "bohatei/adaptation.h"
#include "bohatei/defense_graph.h"
#include "bohatei/errors.h"
#include "bohatei/rng.h"
#include "bohatei/topology.h"

namespace bohatei {
namespace {

TrafficMatrix Row(std::vector<double> cells) {
  TrafficMatrix t;
  t.t.push_back(std::move(cells));
  return t;
}

// The three-epoch trace over two cells used throughout.
std::vector<TrafficMatrix> ToyTrace() { return {Row({10, 0}), Row({20, 0}), Row({0, 30})}; }

double Sum(const TrafficMatrix& t) {
  double s = 0.0;
  for (const auto& row : t.t) {
    for (double v : row) s += v;
  }
  return s;
}

TEST(AdversaryNext, BudgetConserved) {
  for (AdversaryKind kind : AllAdversaryKinds()) {
    for (int epoch = 0; epoch < 50; ++epoch) {
      const TrafficMatrix t = AdversaryNext({kind, 9}, {100.0}, epoch, 24, 4);
      EXPECT_NEAR(Sum(t), 100.0, 1e-9) << AdversaryKindName(kind);
      for (const auto& row : t.t) {
        for (double v : row) EXPECT_GE(v, 0.0);
      }
    }
  }
}

TEST(AdversaryNext, SteadyNeverChanges) {
  const AdversaryStrategy s{AdversaryKind::kSteady, 3};
  const TrafficMatrix first = AdversaryNext(s, {50.0}, 0, 6, 3);
  for (int epoch : {1, 2, 17, 499}) {
    EXPECT_EQ(AdversaryNext(s, {50.0}, epoch, 6, 3).t, first.t);
  }
}

TEST(AdversaryNext, FlipAlternates) {
  const AdversaryStrategy s{AdversaryKind::kFlipPrevEpoch, 3};
  const auto m0 = AdversaryNext(s, {50.0}, 0, 6, 3);
  const auto m1 = AdversaryNext(s, {50.0}, 1, 6, 3);
  EXPECT_EQ(AdversaryNext(s, {50.0}, 2, 6, 3).t, m0.t);
  EXPECT_EQ(AdversaryNext(s, {50.0}, 3, 6, 3).t, m1.t);
  EXPECT_NE(m0.t, m1.t);
}

TEST(AdversaryNext, PureFunctionOfSeedAndEpoch) {
  const AdversaryStrategy s{AdversaryKind::kRandHybrid, 11};
  EXPECT_EQ(AdversaryNext(s, {10.0}, 5, 8, 4).t, AdversaryNext(s, {10.0}, 5, 8, 4).t);
  bool differs = false;
  for (int epoch = 1; epoch < 10 && !differs; ++epoch) {
    differs = AdversaryNext(s, {10.0}, epoch, 8, 4).t != AdversaryNext(s, {10.0}, 0, 8, 4).t;
  }
  EXPECT_TRUE(differs);
}

TEST(AdversaryNext, RejectsBadArguments) {
  EXPECT_THROW(AdversaryNext({}, {10.0}, -1, 2, 2), InputError);
  EXPECT_THROW(AdversaryNext({}, {-1.0}, 0, 2, 2), InputError);
  EXPECT_THROW(AdversaryNext({}, {1.0}, 0, 0, 2), InputError);
  EXPECT_THROW(ParseAdversaryKind("sideways"), InputError);
  EXPECT_EQ(ParseAdversaryKind("randhybrid"), AdversaryKind::kRandHybrid);
}

TEST(FplEstimate, EmptyHistoryWithinBound) {
  const EstimatorState state(EstimatorKind::kFpl, 1, 2);
  EXPECT_DOUBLE_EQ(FplPerturbationBound({30.0}, 1, 1, 2), 30.0);
  Rng rng(1);
  for (int k = 0; k < 1000; ++k) {
    const TrafficMatrix t = FplEstimate(state, {30.0}, rng);
    for (double v : t.t[0]) {
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, 30.0);
    }
  }
}

TEST(FplEstimate, ConvergesOnConstantHistory) {
  EstimatorState state(EstimatorKind::kFpl, 1, 2);
  const TrafficMatrix star = Row({12.0, 3.0});
  for (int k = 0; k < 999; ++k) state.Observe(star);
  Rng rng(5);
  const TrafficMatrix t = FplEstimate(state, {30.0}, rng);
  const double bound = FplPerturbationBound({30.0}, 1000, 1, 2);
  EXPECT_NEAR(bound, 0.03, 1e-12);
  for (int a = 0; a < 2; ++a) {
    EXPECT_GE(t.t[0][a], star.t[0][a] - 1e-9);
    EXPECT_LE(t.t[0][a], star.t[0][a] + bound + 1e-9);
  }
}

TEST(FplEstimate, SeededRepeatable) {
  EstimatorState state(EstimatorKind::kFpl, 3, 2);
  state.Observe(AdversaryNext({AdversaryKind::kRandHybrid, 1}, {30.0}, 0, 3, 2));
  Rng a(77), b(77);
  EXPECT_EQ(FplEstimate(state, {30.0}, a).t, FplEstimate(state, {30.0}, b).t);
}

TEST(PrevEpochEstimate, Basics) {
  EstimatorState state(EstimatorKind::kPrevEpoch, 1, 2);
  EXPECT_EQ(PrevEpochEstimate(state).t, Row({0, 0}).t);
  state.Observe(Row({1, 2}));
  state.Observe(Row({3, 4}));
  EXPECT_EQ(PrevEpochEstimate(state).t, Row({3, 4}).t);
  EXPECT_EQ(PrevEpochEstimate(state).t, Row({3, 4}).t);
}

TEST(UniformEstimate, SplitsBudget) {
  EXPECT_EQ(UniformEstimate({30.0}, 1, 2).t, Row({15, 15}).t);
  EXPECT_EQ(UniformEstimate({0.0}, 1, 2).t, Row({0, 0}).t);
  EXPECT_NEAR(Sum(UniformEstimate({100.0}, 7, 3)), 100.0, 1e-9);
}

TEST(Estimate, AppliesGamma) {
  EstimatorState state(EstimatorKind::kUniform, 1, 2, 1.5);
  Rng rng(1);
  EXPECT_EQ(Estimate(state, {30.0}, rng).t, Row({22.5, 22.5}).t);
}

TEST(AccountLoss, ToyTraceWithPrevEpoch) {
  EstimatorState state(EstimatorKind::kPrevEpoch, 1, 2);
  std::vector<double> wastage, evasion;
  for (const TrafficMatrix& actual : ToyTrace()) {
    const EpochLoss loss = AccountLoss(PrevEpochEstimate(state), actual, {});
    wastage.push_back(loss.wastage_gbps);
    evasion.push_back(loss.evasion_gbps);
    state.Observe(actual);
  }
  EXPECT_EQ(wastage, (std::vector<double>{0, 0, 20}));
  EXPECT_EQ(evasion, (std::vector<double>{10, 10, 30}));
}

TEST(AccountLoss, SignedIdentity) {
  Rng rng(8);
  for (int k = 0; k < 100; ++k) {
    TrafficMatrix p = TrafficMatrix::Zero(3, 2), a = TrafficMatrix::Zero(3, 2);
    double signed_sum = 0.0;
    for (int e = 0; e < 3; ++e) {
      for (int t = 0; t < 2; ++t) {
        p.t[e][t] = rng.Uniform(0, 10);
        a.t[e][t] = rng.Uniform(0, 10);
        signed_sum += p.t[e][t] - a.t[e][t];
      }
    }
    const EpochLoss loss = AccountLoss(p, a, {});
    EXPECT_NEAR(loss.wastage_gbps - loss.evasion_gbps, signed_sum, 1e-9);
    const EpochLoss self = AccountLoss(a, a, {});
    EXPECT_EQ(self.wastage_gbps + self.evasion_gbps + self.wastage_vm, 0.0);
  }
}

TEST(AccountLoss, VmWastageUsesComputeFactor) {
  const GraphLibrary lib = BuiltinLibrary();
  TrafficMatrix p = TrafficMatrix::Zero(1, 4), a = TrafficMatrix::Zero(1, 4);
  p.t[0][2] = 10.0;
  const EpochLoss loss = AccountLoss(p, a, lib);
  EXPECT_NEAR(loss.wastage_vm, 10.0 * GraphComputeFactor(lib[2]), 1e-12);
}

TEST(BestStaticHindsight, ConstantTrace) {
  const std::vector<TrafficMatrix> trace(5, Row({4, 7}));
  const StaticSolution s = BestStaticHindsight(trace);
  EXPECT_EQ(s.matrix.t, Row({4, 7}).t);
  EXPECT_EQ(s.loss, 0.0);
}

TEST(BestStaticHindsight, FlatRegionPicksObservedValue) {
  const StaticSolution s = BestStaticHindsight({Row({0}), Row({10})});
  EXPECT_DOUBLE_EQ(s.loss, 10.0);
  EXPECT_TRUE(s.matrix.t[0][0] == 0.0 || s.matrix.t[0][0] == 10.0);
}

TEST(BestStaticHindsight, ToyTraceMatchesGridSearch) {
  const auto trace = ToyTrace();
  double grid_best = std::numeric_limits<double>::infinity();
  for (double x : {0.0, 10.0, 20.0, 30.0}) {
    for (double y : {0.0, 10.0, 20.0, 30.0}) {
      double loss = 0.0;
      for (const TrafficMatrix& t : trace) {
        loss += std::abs(x - t.t[0][0]) + std::abs(y - t.t[0][1]);
      }
      grid_best = std::min(grid_best, loss);
    }
  }
  const StaticSolution s = BestStaticHindsight(trace);
  EXPECT_DOUBLE_EQ(s.loss, grid_best);
  EXPECT_LE(s.loss, 70.0);
}

TEST(BestStaticHindsight, RejectsEmptyTrace) {
  EXPECT_THROW(BestStaticHindsight({}), InputError);
}

TEST(NormalizedRegret, StaticReplayHasZeroRegret) {
  Rng rng(4);
  std::vector<TrafficMatrix> trace;
  for (int k = 0; k < 30; ++k) trace.push_back(Row({rng.Uniform(0, 9), rng.Uniform(0, 9)}));
  const StaticSolution s = BestStaticHindsight(trace);
  const RegretReport r = NormalizedRegret(trace, std::vector<TrafficMatrix>(30, s.matrix), {});
  EXPECT_NEAR(r.regret, 0.0, 1e-12);
}

TEST(NormalizedRegret, PrevEpochOnToyTraceIsPositive) {
  const auto trace = ToyTrace();
  const std::vector<TrafficMatrix> prov{Row({0, 0}), Row({10, 0}), Row({20, 0})};
  const RegretReport r = NormalizedRegret(trace, prov, {});
  EXPECT_DOUBLE_EQ(r.cum_loss, 70.0);
  EXPECT_GT(r.regret, 0.0);
  EXPECT_NEAR(r.regret, r.regret_g1 + r.regret_g2, 1e-12);
  EXPECT_NEAR(RegretToDate(trace, prov).back(), r.regret, 1e-12);
}

TEST(NormalizedRegret, ScaleInvariant) {
  Rng rng(6);
  std::vector<TrafficMatrix> trace, prov, trace_c, prov_c;
  for (int k = 0; k < 40; ++k) {
    trace.push_back(Row({rng.Uniform(0, 9), rng.Uniform(0, 9)}));
    prov.push_back(Row({rng.Uniform(0, 9), rng.Uniform(0, 9)}));
    trace_c.push_back(Row({trace.back().t[0][0] * 3.5, trace.back().t[0][1] * 3.5}));
    prov_c.push_back(Row({prov.back().t[0][0] * 3.5, prov.back().t[0][1] * 3.5}));
  }
  EXPECT_NEAR(NormalizedRegret(trace, prov, {}).regret,
              NormalizedRegret(trace_c, prov_c, {}).regret, 1e-9);
}

TEST(RunRegret, LagOnlySeesPast) {
  RegretRun run;
  run.adversary = {AdversaryKind::kRandHybrid, 2};
  run.estimator = EstimatorKind::kPrevEpoch;
  run.epochs = 20;
  run.n_pops = 4;
  run.n_attacks = 2;
  std::vector<TrafficMatrix> trace, prov;
  RunRegret(run, {}, &trace, &prov);
  ASSERT_EQ(prov.size(), 20u);
  EXPECT_EQ(prov[0].t, TrafficMatrix::Zero(4, 2).t);
  for (int t = 1; t < 20; ++t) EXPECT_EQ(prov[t].t, trace[t - 1].t);
}

TEST(RunRegret, SteadyFplStopsEvading) {
  RegretRun run;
  run.adversary = {AdversaryKind::kSteady, 5};
  run.epochs = 100;
  run.n_pops = 4;
  run.n_attacks = 2;
  const RegretReport r = RunRegret(run, {});
  // Past warm-up the estimate is the mix plus a nonnegative perturbation.
  for (int t = 1; t < 100; ++t) EXPECT_NEAR(r.epochs[t].evasion_gbps, 0.0, 1e-9);
  EXPECT_GT(r.epochs[0].evasion_gbps, 0.0);
}

TEST(OverprovisionDsp, ScalesAndFits) {
  Topology topo;
  topo.pops.push_back({0, "p"});
  Datacenter dc;
  dc.id = 0;
  dc.link_capacity_gbps = 100;
  dc.racks.push_back({0, {{0, 10}}});
  topo.datacenters.push_back(dc);
  topo.latency = {{0.0}};
  topo.paths[{0, 0}] = {};
  const GraphLibrary lib{BuiltinLibrary()[3]};
  TrafficMatrix t = TrafficMatrix::Zero(1, 1);
  t.t[0][0] = 20.0;
  const DspResult base = DspGreedy(topo, t, lib);
  const DspResult over = OverprovisionDsp(base, 2.0, topo);
  int total = 0;
  for (size_t i = 0; i < base.n_dc[0][0].size(); ++i) {
    EXPECT_GE(over.n_dc[0][0][i], base.n_dc[0][0][i]);
    total += over.n_dc[0][0][i];
  }
  EXPECT_LE(total, 10);
  EXPECT_GT(total, base.TotalVms());
  EXPECT_EQ(OverprovisionDsp(base, 1.0, topo).n_dc, base.n_dc);
}

}  // namespace
}  // namespace bohatei
