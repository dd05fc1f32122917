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

#ifndef BOHATEI_DEFENSE_GRAPH_H_
#define BOHATEI_DEFENSE_GRAPH_H_

#include <string>
#include <vector>

namespace bohatei {

// Tolerance used when turning fractional VM demand into whole VMs, so that
// 2.0000000001 VMs of demand is still two VMs.
inline constexpr double kVmEpsilon = 1e-9;

int CeilVms(double fractional_vms);

enum class ModuleKind { kAnalysis, kResponse };

const char* ModuleKindName(ModuleKind kind);
ModuleKind ParseModuleKind(const std::string& name);

struct AttackType {
  int id = 0;
  std::string name;
};

struct LogicalModule {
  int id = 0;
  std::string name;
  ModuleKind kind = ModuleKind::kAnalysis;
  double capacity_gbps = 1.0;  // per-VM processing capacity
  int contexts = 1;            // distinct output tags this module can emit
  bool bidirectional = false;  // requests and responses must hit the same VM
};

// `weight` is the fraction of the graph's total input that traverses the
// edge; `context` is the output context of `from` that selects this edge.
struct GraphEdge {
  int from = 0;
  int to = 0;
  double weight = 0.0;
  int context = 0;
};

// A validated defense DAG annotated with traffic fractions and capacities.
class AnnotatedGraph {
 public:
  AnnotatedGraph() = default;
  // root_fractions[i] is the share of external input that enters node i;
  // leave it empty to split evenly across roots. Throws InputError.
  AnnotatedGraph(AttackType attack, std::vector<LogicalModule> nodes,
                 std::vector<GraphEdge> edges,
                 std::vector<double> root_fractions = {});

  const AttackType& attack() const { return attack_; }
  const std::vector<LogicalModule>& nodes() const { return nodes_; }
  const std::vector<GraphEdge>& edges() const { return edges_; }
  int NumNodes() const { return static_cast<int>(nodes_.size()); }
  const LogicalModule& node(int i) const;

  // Fraction of graph input that reaches node i (root share or incoming sum).
  double IncomingShare(int i) const;
  double RootFraction(int i) const { return root_fraction_.at(i); }
  bool IsRoot(int i) const;
  const std::vector<int>& Predecessors(int i) const { return preds_.at(i); }
  const std::vector<int>& OutEdges(int i) const { return out_edges_.at(i); }
  const std::vector<int>& TopologicalOrder() const { return topo_order_; }
  // VM slots per Gbps of graph input for this node: share / capacity.
  double NodeVmFactor(int i) const;
  int MaxContexts() const;

  // Structure-only warnings raised at validation (e.g. lossy splits).
  const std::vector<std::string>& warnings() const { return warnings_; }

 private:
  void Validate();

  AttackType attack_;
  std::vector<LogicalModule> nodes_;
  std::vector<GraphEdge> edges_;
  std::vector<double> root_fraction_;
  std::vector<double> share_;
  std::vector<std::vector<int>> preds_;
  std::vector<std::vector<int>> out_edges_;
  std::vector<int> topo_order_;
  std::vector<std::string> warnings_;
};

// Indexed by attack id.
using GraphLibrary = std::vector<AnnotatedGraph>;

void ValidateLibrary(const GraphLibrary& lib);

// Smallest VM count covering node i's share of t_gbps (capacity constraint).
int NodeDemandVms(const AnnotatedGraph& g, int node, double t_gbps);

// Sum over nodes of share / capacity: VM slots per Gbps of graph input.
double GraphComputeFactor(const AnnotatedGraph& g);

// Per-VM throughput when one VM carries the whole graph: the bottleneck
// module's capacity divided by the share of traffic it must process.
double MonolithicThroughput(const AnnotatedGraph& g);

int MonolithicDemandVms(const AnnotatedGraph& g, double t_gbps);

// Sum of NodeDemandVms over all nodes.
int FineGrainedDemandVms(const AnnotatedGraph& g, double t_gbps);

struct LibraryDefaults {
  double analysis_capacity_gbps = 5.0;
  double response_capacity_gbps = 10.0;
};

// SYN flood, DNS amplification, UDP flood, elephant flow (ids 0..3).
GraphLibrary BuiltinLibrary(const LibraryDefaults& defaults = {});

}  // namespace bohatei

#endif  // BOHATEI_DEFENSE_GRAPH_H_
