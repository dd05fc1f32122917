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

#ifndef BOHATEI_IO_H_
#define BOHATEI_IO_H_

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bohatei/defense_graph.h"
#include "bohatei/orchestration.h"
#include "bohatei/resource_manager.h"
#include "bohatei/simulation.h"
#include "bohatei/topology.h"

namespace bohatei {

using Json = nlohmann::json;

// Parse failures and schema mismatches raise InputError; unreadable or
// unwritable files raise IoError.
Json ReadJsonFile(const std::string& path);
void WriteJsonFile(const std::string& path, const Json& j);
void WriteTextFile(const std::string& path, const std::string& text);

Json TopologyToJson(const Topology& topo);
// "latency" is either a matrix or "derive" (hop count times "hop_cost").
Topology TopologyFromJson(const Json& j);

Json GraphToJson(const AnnotatedGraph& g);
AnnotatedGraph GraphFromJson(const Json& j);
Json LibraryToJson(const GraphLibrary& lib);
// Accepts {"graphs": [...]}, a bare array, or {"builtin": true, ...capacities}.
GraphLibrary LibraryFromJson(const Json& j);

Json TrafficToJson(const TrafficMatrix& t);
// Accepts {"t": [[...]]} or a bare matrix.
TrafficMatrix TrafficFromJson(const Json& j);

Json CostParamsToJson(const CostParams& p);
CostParams CostParamsFromJson(const Json& j);

struct Assignment {
  DspResult dsp;
  std::vector<SspResult> ssps;  // empty before server selection
};

Json AssignmentToJson(const Assignment& a);
Assignment AssignmentFromJson(const Json& j);

Json ViolationsToJson(const std::vector<Violation>& v);

Json PlanToJson(const ForwardingPlan& plan);
ForwardingPlan PlanFromJson(const Json& j);

// Relative topology/graph paths resolve against base_dir.
Scenario ScenarioFromJson(const Json& j, const std::string& base_dir = ".");
Scenario LoadScenario(const std::string& path);
Json ScenarioToJson(const Scenario& sc);

// Totals, regret and per-stage timings for every seed of a run.
Json SimulationSummary(const Scenario& sc, const std::vector<SimulationRun>& runs);

}  // namespace bohatei

#endif  // BOHATEI_IO_H_
