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

#ifndef BOHATEI_ADAPTATION_H_
#define BOHATEI_ADAPTATION_H_

#include <cstdint>
#include <string>
#include <vector>

#include "bohatei/defense_graph.h"
#include "bohatei/resource_manager.h"
#include "bohatei/rng.h"
#include "bohatei/topology.h"

namespace bohatei {

struct Budget {
  double b_gbps = 0.0;
};

enum class AdversaryKind { kRandIngress, kRandAttack, kRandHybrid, kSteady, kFlipPrevEpoch };

const char* AdversaryKindName(AdversaryKind kind);
AdversaryKind ParseAdversaryKind(const std::string& name);  // case-insensitive
std::vector<AdversaryKind> AllAdversaryKinds();

struct AdversaryStrategy {
  AdversaryKind kind = AdversaryKind::kRandHybrid;
  std::uint64_t seed = 0;
};

// The attack mix for one epoch; the budget is split evenly over the chosen
// (ingress, attack) cells so the total is exactly b_gbps. A pure function of
// (strategy, epoch): random choices come from a per-epoch stream.
TrafficMatrix AdversaryNext(const AdversaryStrategy& strategy, const Budget& budget,
                            int epoch, int n_pops, int n_attacks);

enum class EstimatorKind { kFpl, kPrevEpoch, kUniform };

const char* EstimatorKindName(EstimatorKind kind);
EstimatorKind ParseEstimatorKind(const std::string& name);

// Observations so far. Keeps a running sum so the mean is O(cells).
class EstimatorState {
 public:
  EstimatorState(EstimatorKind kind, int n_pops, int n_attacks, double gamma = 1.0);

  void Observe(const TrafficMatrix& actual);

  EstimatorKind kind() const { return kind_; }
  double gamma() const { return gamma_; }
  int n_pops() const { return n_pops_; }
  int n_attacks() const { return n_attacks_; }
  const std::vector<TrafficMatrix>& history() const { return history_; }
  TrafficMatrix Mean() const;

 private:
  EstimatorKind kind_;
  int n_pops_;
  int n_attacks_;
  double gamma_;
  std::vector<TrafficMatrix> history_;
  TrafficMatrix sum_;
};

// Upper end of the perturbation interval when predicting epoch next_epoch
// (1-based).
double FplPerturbationBound(const Budget& budget, int next_epoch, int n_pops, int n_attacks);

// History mean plus an independent Uniform[0, bound] draw per cell.
TrafficMatrix FplEstimate(const EstimatorState& state, const Budget& budget, Rng& rng);
// Last observation, or zeros before the first one.
TrafficMatrix PrevEpochEstimate(const EstimatorState& state);
TrafficMatrix UniformEstimate(const Budget& budget, int n_pops, int n_attacks);

// Dispatches on the state's kind, clamps at zero and scales by gamma.
TrafficMatrix Estimate(const EstimatorState& state, const Budget& budget, Rng& rng);

struct LossWeights {
  double wastage = 1.0;
  double evasion = 1.0;
};

struct EpochLoss {
  double wastage_gbps = 0.0;
  double evasion_gbps = 0.0;
  double wastage_vm = 0.0;  // wastage converted with each attack's compute factor

  double Combined(const LossWeights& w) const {
    return w.wastage * wastage_gbps + w.evasion * evasion_gbps;
  }
};

// lib may be empty, in which case one Gbps of wastage counts as one slot.
EpochLoss AccountLoss(const TrafficMatrix& provisioned, const TrafficMatrix& actual,
                      const GraphLibrary& lib);

struct StaticSolution {
  TrafficMatrix matrix;
  double loss = 0.0;
};

// Per cell, the best constant among the observed values and their mean under
// weighted wastage + evasion; ties go to the smallest value. Throws
// InputError on an empty trace.
StaticSolution BestStaticHindsight(const std::vector<TrafficMatrix>& trace,
                                   const LossWeights& weights = {});

struct RegretReport {
  std::vector<EpochLoss> epochs;
  double cum_wastage_gbps = 0.0;
  double cum_evasion_gbps = 0.0;
  double cum_wastage_vm = 0.0;
  double cum_loss = 0.0;
  StaticSolution best_static;
  double static_wastage_gbps = 0.0;
  double static_wastage_vm = 0.0;
  double static_evasion_gbps = 0.0;
  // (cumulative loss - static loss) / max(static loss, eps) on the combined
  // loss. The per-goal terms split the numerator by goal (same static, same
  // denominator), so regret == regret_g1 + regret_g2.
  double regret = 0.0;
  double regret_g1 = 0.0;
  double regret_g2 = 0.0;
};

RegretReport NormalizedRegret(const std::vector<TrafficMatrix>& trace,
                              const std::vector<TrafficMatrix>& provisioned,
                              const GraphLibrary& lib, const LossWeights& weights = {});

// Normalized combined-loss regret after each epoch, each prefix compared
// with its own best static solution. Last entry equals NormalizedRegret's.
std::vector<double> RegretToDate(const std::vector<TrafficMatrix>& trace,
                                 const std::vector<TrafficMatrix>& provisioned,
                                 const LossWeights& weights = {});

struct RegretRun {
  AdversaryStrategy adversary;
  EstimatorKind estimator = EstimatorKind::kFpl;
  double gamma = 1.0;
  Budget budget{100.0};
  int n_pops = 24;
  int n_attacks = 4;
  int epochs = 500;
  std::uint64_t estimator_seed = 0;
  LossWeights weights;
};

// Adversary against estimator at traffic level; the estimate for epoch t
// sees observations of epochs < t only.
RegretReport RunRegret(const RegretRun& run, const GraphLibrary& lib,
                       std::vector<TrafficMatrix>* trace_out = nullptr,
                       std::vector<TrafficMatrix>* provisioned_out = nullptr);

// Scales every VM count by gamma (rounded up), then trims the largest
// increases until each datacenter fits its slots. Counts never drop below
// the input's.
DspResult OverprovisionDsp(const DspResult& dsp, double gamma, const Topology& topo);

}  // namespace bohatei

#endif  // BOHATEI_ADAPTATION_H_
