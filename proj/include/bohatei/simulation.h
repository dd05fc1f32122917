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

#ifndef BOHATEI_SIMULATION_H_
#define BOHATEI_SIMULATION_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bohatei/adaptation.h"
#include "bohatei/defense_graph.h"
#include "bohatei/resource_manager.h"
#include "bohatei/topology.h"

namespace bohatei {

inline constexpr int kScenarioSchemaVersion = 1;

struct Scenario {
  int schema_version = kScenarioSchemaVersion;
  Topology topo;
  GraphLibrary lib;
  AdversaryStrategy adversary;
  Budget budget{100.0};
  // When set, replaces the adversary: epoch t plays scripted[t].
  std::optional<std::vector<TrafficMatrix>> scripted;
  EstimatorKind estimator = EstimatorKind::kFpl;
  double gamma = 1.0;
  int epochs = 500;
  std::vector<std::uint64_t> seeds{1};
  CostParams params;
  DspOptions dsp_options;
  LossWeights weights;
  int max_tag_bits = 16;
  std::string csv_out;
  std::string json_out;

  // Throws InputError; called before epoch 0.
  void Validate() const;
};

struct EpochRecord {
  int epoch = 0;
  TrafficMatrix actual;
  TrafficMatrix estimate;
  TrafficMatrix provisioned;  // gamma * estimate volume the plan serves
  double handled_gbps = 0.0;
  double t_left = 0.0;
  double wide_area_cost = 0.0;
  double total_cost = 0.0;
  int total_vms = 0;
  int dsp_iterations = 0;
  long tag_rules = 0;
  long total_rules = 0;
  int tag_bits = 0;
  EpochLoss loss;
  int violations = 0;
  std::string infeasibility;  // empty unless placement or orchestration failed

  bool Infeasible() const { return !infeasibility.empty() || violations > 0; }
};

struct StageTimes {
  double estimate_ms = 0.0;
  double dsp_ms = 0.0;
  double ssp_ms = 0.0;
  double orchestration_ms = 0.0;
};

struct SimulationRun {
  std::uint64_t seed = 0;
  std::vector<EpochRecord> records;
  RegretReport regret;
  StageTimes times;
};

// Epoch loop for one seed: mix_t from the adversary, estimate from mixes
// before t, resource manager and orchestration on the estimate, losses
// against mix_t. Placement failures are recorded, never thrown.
SimulationRun RunSimulation(const Scenario& sc, std::uint64_t seed);

struct ProvisioningTotals {
  double static_peak_total = 0.0;  // epochs * sum_a max_t demand
  double elastic_total = 0.0;      // sum_t sum_a demand
};

// demand[a][t] in Gbps. Throws InputError if empty or ragged.
ProvisioningTotals CompareProvisioning(const std::vector<std::vector<double>>& demand);

// One row per epoch, fixed column order. Byte-identical for equal inputs.
std::string EpochCsv(const std::vector<EpochRecord>& records);
void WriteEpochCsv(const std::vector<EpochRecord>& records, const std::string& path);

}  // namespace bohatei

#endif  // BOHATEI_SIMULATION_H_
