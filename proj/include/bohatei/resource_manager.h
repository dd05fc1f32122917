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

#ifndef BOHATEI_RESOURCE_MANAGER_H_
#define BOHATEI_RESOURCE_MANAGER_H_

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "bohatei/defense_graph.h"
#include "bohatei/topology.h"

namespace bohatei {

// Suspicious volume in Gbps, t[e][a] for ingress PoP e and attack type a.
struct TrafficMatrix {
  std::vector<std::vector<double>> t;

  static TrafficMatrix Zero(int n_pops, int n_attacks);
  int NumPops() const { return static_cast<int>(t.size()); }
  int NumAttacks() const { return t.empty() ? 0 : static_cast<int>(t[0].size()); }
  double Total() const;
  void Validate(int n_pops, int n_attacks) const;
};

struct VmInstance {
  int vm_id = 0;   // unique within the physical graph
  int node = 0;    // logical node it realizes
  int server = -1; // -1 while unplaced
};

// Instantiation of one attack's annotated graph inside one datacenter.
struct PhysicalGraph {
  int attack = 0;
  int dc = 0;
  double input_gbps = 0.0;  // traffic of this attack assigned to this dc
  std::vector<int> vm_count;            // per logical node
  std::vector<VmInstance> instances;    // grouped by node, vm ids ascending

  int TotalVms() const;
  bool Placed() const;
  std::vector<const VmInstance*> InstancesOf(int node) const;
  // Throws InputError when counts and instance lists disagree.
  void Validate(const AnnotatedGraph& g) const;
};

// Builds an unplaced physical graph with vm_count[i] instances of node i.
PhysicalGraph MakePhysicalGraph(int attack, int dc, double input_gbps,
                                const std::vector<int>& vm_count);

struct DspOptions {
  // Ceil every assignment's VM demand separately instead of ceiling the
  // accumulated fractional demand once per (dc, attack, node).
  bool ceil_per_assignment = false;
};

struct DspResult {
  std::vector<std::vector<std::vector<double>>> f;      // [e][a][d]
  std::vector<std::vector<std::vector<int>>> n_dc;      // [d][a][i]
  std::vector<std::vector<std::vector<double>>> fractional_vms;  // [d][a][i]
  std::map<std::pair<int, int>, PhysicalGraph> physical;  // (attack, dc)
  double t_left = 0.0;
  double wide_area_cost = 0.0;  // sum f*T*L, before alpha
  int iterations = 0;           // heap extractions

  double HandledVolume(const TrafficMatrix& traffic) const;
  // Volume of attack a sent to datacenter d.
  double AssignedVolume(const TrafficMatrix& traffic, int a, int d) const;
  int TotalVms() const;
};

// Datacenter selection: largest remaining volume first, nearest datacenter
// with spare link and compute capacity, leftover reinserted. Never throws on
// shortage; unserved volume ends in t_left.
DspResult DspGreedy(const Topology& topo, const TrafficMatrix& traffic,
                    const GraphLibrary& lib, const DspOptions& options = {});

struct PlacementUnits {
  double intra_rack = 0.0;
  double inter_rack = 0.0;
};

// Traffic units crossing servers within a rack and across racks, assuming
// each edge's traffic spreads uniformly over sender/receiver VM pairs.
PlacementUnits ComputePlacementUnits(const Datacenter& dc, const PhysicalGraph& pg,
                                     const AnnotatedGraph& g);

struct SspResult {
  int dc = 0;
  std::vector<std::vector<std::vector<int>>> n_srv;  // [server][a][i]
  std::vector<PhysicalGraph> placed;                 // one per input graph
  double intra_rack_units = 0.0;
  double inter_rack_units = 0.0;
};

// Server selection inside one datacenter. Places each logical node's VMs
// together on one server if possible, else in one rack, else across racks.
// Throws InfeasibleError naming the node when slots run out.
SspResult SspGreedy(const Datacenter& dc, const std::vector<PhysicalGraph>& graphs,
                    const GraphLibrary& lib);

// Runs SspGreedy for every datacenter of a DSP result, in dc order.
std::vector<SspResult> SspAll(const Topology& topo, const DspResult& dsp,
                              const GraphLibrary& lib);

// alpha * sum f*T*L + sum_d (intra * IntraUnitCost + inter * InterUnitCost).
double EvaluateCost(const Topology& topo, const TrafficMatrix& traffic,
                    const DspResult& dsp, const std::vector<SspResult>& ssps,
                    const CostParams& params);

struct Violation {
  int constraint = 0;        // numbering of the optimal formulation
  std::vector<int> indices;  // e.g. {e, a} or {d, s}
  double slack = 0.0;        // capacity minus load; negative when violated
  std::string message;
};

std::string ToString(const Violation& v);

// Checks served-fraction, link, VM-sufficiency, server-slot, placement-count,
// flow-conservation and backbone-load constraints. Empty iff feasible.
std::vector<Violation> CheckFeasibility(const Topology& topo,
                                        const TrafficMatrix& traffic,
                                        const GraphLibrary& lib,
                                        const DspResult& dsp,
                                        const std::vector<SspResult>& ssps,
                                        const CostParams& params);

}  // namespace bohatei

#endif  // BOHATEI_RESOURCE_MANAGER_H_
