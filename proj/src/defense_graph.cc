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

#include "bohatei/defense_graph.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <set>
#include <utility>

#include "bohatei/errors.h"

namespace bohatei {
namespace {

constexpr double kShareTolerance = 1e-9;

}  // namespace

int CeilVms(double fractional_vms) {
  if (!(fractional_vms > kVmEpsilon)) return 0;
  return static_cast<int>(std::ceil(fractional_vms - kVmEpsilon));
}

const char* ModuleKindName(ModuleKind kind) {
  return kind == ModuleKind::kAnalysis ? "analysis" : "response";
}

ModuleKind ParseModuleKind(const std::string& name) {
  if (name == "analysis" || name == "A") return ModuleKind::kAnalysis;
  if (name == "response" || name == "R") return ModuleKind::kResponse;
  throw InputError("unknown module kind '" + name + "'");
}

AnnotatedGraph::AnnotatedGraph(AttackType attack, std::vector<LogicalModule> nodes,
                               std::vector<GraphEdge> edges,
                               std::vector<double> root_fractions)
    : attack_(std::move(attack)),
      nodes_(std::move(nodes)),
      edges_(std::move(edges)),
      root_fraction_(std::move(root_fractions)) {
  Validate();
}

void AnnotatedGraph::Validate() {
  const std::string where = "graph '" + attack_.name + "': ";
  const int n = NumNodes();
  if (n == 0) throw InputError(where + "no nodes");
  for (int i = 0; i < n; ++i) {
    const LogicalModule& m = nodes_[i];
    if (m.id != i) throw InputError(where + "node ids must be dense from 0");
    if (!(m.capacity_gbps > 0.0) || !std::isfinite(m.capacity_gbps)) {
      throw InputError(where + "node " + m.name + " needs capacity > 0");
    }
    if (m.contexts < 1) throw InputError(where + "node " + m.name + " needs contexts >= 1");
  }

  preds_.assign(n, {});
  out_edges_.assign(n, {});
  std::set<std::pair<int, int>> seen_pairs, seen_contexts;
  for (int k = 0; k < static_cast<int>(edges_.size()); ++k) {
    const GraphEdge& e = edges_[k];
    if (e.from < 0 || e.from >= n || e.to < 0 || e.to >= n || e.from == e.to) {
      throw InputError(where + "edge " + std::to_string(k) + " has bad endpoints");
    }
    if (!(e.weight >= 0.0 && e.weight <= 1.0)) {
      throw InputError(where + "edge weight outside [0,1]");
    }
    if (e.context < 0 || e.context >= nodes_[e.from].contexts) {
      throw InputError(where + "edge context out of range for " + nodes_[e.from].name);
    }
    if (!seen_pairs.insert({e.from, e.to}).second) {
      throw InputError(where + "duplicate edge");
    }
    if (!seen_contexts.insert({e.from, e.context}).second) {
      throw InputError(where + "two edges share an output context of " +
                       nodes_[e.from].name);
    }
    preds_[e.to].push_back(e.from);
    out_edges_[e.from].push_back(k);
  }

  // Kahn's algorithm, smallest id first for a canonical order.
  std::vector<int> indegree(n, 0);
  for (const GraphEdge& e : edges_) ++indegree[e.to];
  std::priority_queue<int, std::vector<int>, std::greater<>> ready;
  for (int i = 0; i < n; ++i) {
    if (indegree[i] == 0) ready.push(i);
  }
  topo_order_.clear();
  while (!ready.empty()) {
    const int u = ready.top();
    ready.pop();
    topo_order_.push_back(u);
    for (int k : out_edges_[u]) {
      if (--indegree[edges_[k].to] == 0) ready.push(edges_[k].to);
    }
  }
  if (static_cast<int>(topo_order_.size()) != n) throw InputError(where + "graph has a cycle");

  int n_roots = 0;
  for (int i = 0; i < n; ++i) n_roots += preds_[i].empty() ? 1 : 0;
  if (root_fraction_.empty()) {
    root_fraction_.assign(n, 0.0);
    for (int i = 0; i < n; ++i) {
      if (preds_[i].empty()) root_fraction_[i] = 1.0 / n_roots;
    }
  }
  if (static_cast<int>(root_fraction_.size()) != n) {
    throw InputError(where + "root fraction list must cover every node");
  }
  double root_total = 0.0;
  for (int i = 0; i < n; ++i) {
    if (!(root_fraction_[i] >= 0.0)) throw InputError(where + "negative root fraction");
    if (!preds_[i].empty() && root_fraction_[i] != 0.0) {
      throw InputError(where + "only roots take external input");
    }
    root_total += root_fraction_[i];
  }
  if (std::abs(root_total - 1.0) > kShareTolerance) {
    throw InputError(where + "root fractions must sum to 1");
  }

  share_.assign(n, 0.0);
  for (int i = 0; i < n; ++i) share_[i] = root_fraction_[i];
  for (const GraphEdge& e : edges_) share_[e.to] += e.weight;
  warnings_.clear();
  for (int i = 0; i < n; ++i) {
    double out = 0.0;
    for (int k : out_edges_[i]) out += edges_[k].weight;
    if (out > share_[i] + kShareTolerance) {
      throw InputError(where + "outgoing weight of " + nodes_[i].name +
                       " exceeds its incoming share");
    }
    if (!out_edges_[i].empty() && out < share_[i] - kShareTolerance) {
      warnings_.push_back(nodes_[i].name + " forwards less than it receives");
    }
  }
}

const LogicalModule& AnnotatedGraph::node(int i) const {
  if (i < 0 || i >= NumNodes()) {
    throw InputError("graph '" + attack_.name + "' has no node " + std::to_string(i));
  }
  return nodes_[i];
}

double AnnotatedGraph::IncomingShare(int i) const {
  node(i);
  return share_[i];
}

bool AnnotatedGraph::IsRoot(int i) const { return preds_.at(i).empty(); }

double AnnotatedGraph::NodeVmFactor(int i) const {
  return IncomingShare(i) / nodes_[i].capacity_gbps;
}

int AnnotatedGraph::MaxContexts() const {
  int k = 1;
  for (const LogicalModule& m : nodes_) k = std::max(k, m.contexts);
  return k;
}

void ValidateLibrary(const GraphLibrary& lib) {
  for (int a = 0; a < static_cast<int>(lib.size()); ++a) {
    if (lib[a].attack().id != a) throw InputError("attack ids must be dense from 0");
  }
}

int NodeDemandVms(const AnnotatedGraph& g, int node, double t_gbps) {
  if (!(t_gbps >= 0.0)) throw InputError("traffic volume must be >= 0");
  return CeilVms(t_gbps * g.NodeVmFactor(node));
}

double GraphComputeFactor(const AnnotatedGraph& g) {
  double factor = 0.0;
  for (int i = 0; i < g.NumNodes(); ++i) factor += g.NodeVmFactor(i);
  return factor;
}

double MonolithicThroughput(const AnnotatedGraph& g) {
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < g.NumNodes(); ++i) {
    const double share = g.IncomingShare(i);
    if (share > 0.0) best = std::min(best, g.node(i).capacity_gbps / share);
  }
  return best;
}

int MonolithicDemandVms(const AnnotatedGraph& g, double t_gbps) {
  if (!(t_gbps >= 0.0)) throw InputError("traffic volume must be >= 0");
  return CeilVms(t_gbps / MonolithicThroughput(g));
}

int FineGrainedDemandVms(const AnnotatedGraph& g, double t_gbps) {
  int total = 0;
  for (int i = 0; i < g.NumNodes(); ++i) total += NodeDemandVms(g, i, t_gbps);
  return total;
}

GraphLibrary BuiltinLibrary(const LibraryDefaults& defaults) {
  const double pa = defaults.analysis_capacity_gbps;
  const double pr = defaults.response_capacity_gbps;
  auto analysis = [&](int id, const char* name, int contexts, bool bidi = false) {
    return LogicalModule{id, name, ModuleKind::kAnalysis, pa, contexts, bidi};
  };
  auto response = [&](int id, const char* name) {
    return LogicalModule{id, name, ModuleKind::kResponse, pr, 1, false};
  };
  const double third = 1.0 / 3.0;

  GraphLibrary lib;
  // Benign / partially completed handshakes / never completed.
  lib.emplace_back(AttackType{0, "syn_flood"},
                   std::vector<LogicalModule>{analysis(0, "A_SYN", 3),
                                              response(1, "R_OK"),
                                              response(2, "R_SYNPROXY"),
                                              response(3, "R_DROP")},
                   std::vector<GraphEdge>{{0, 1, third, 0}, {0, 2, third, 1},
                                          {0, 3, third, 2}});
  // Header-only check first, payload matching only for what it flags.
  lib.emplace_back(AttackType{1, "dns_amplification"},
                   std::vector<LogicalModule>{analysis(0, "A_LIGHTCHECK", 2, true),
                                              analysis(1, "A_MATCHREQ", 2, true),
                                              response(2, "R_FORWARD"),
                                              response(3, "R_LOGDROP")},
                   std::vector<GraphEdge>{{0, 2, 0.5, 0}, {0, 1, 0.5, 1},
                                          {1, 2, 0.25, 0}, {1, 3, 0.25, 1}});
  lib.emplace_back(AttackType{2, "udp_flood"},
                   std::vector<LogicalModule>{analysis(0, "A_UDP_RATE", 1),
                                              analysis(1, "A_UDP_CLASSIFY", 2),
                                              response(2, "R_OK"),
                                              response(3, "R_LOG")},
                   std::vector<GraphEdge>{{0, 1, 1.0, 0}, {1, 2, 0.52, 0},
                                          {1, 3, 0.48, 1}});
  lib.emplace_back(AttackType{3, "elephant_flow"},
                   std::vector<LogicalModule>{analysis(0, "A_ELEPHANT", 2),
                                              response(1, "R_FORWARD"),
                                              response(2, "R_DROP")},
                   std::vector<GraphEdge>{{0, 1, 0.5, 0}, {0, 2, 0.5, 1}});
  return lib;
}

}  // namespace bohatei
