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

#include "bohatei/instances.h"

#include <algorithm>
#include <string>
#include <vector>

namespace bohatei {
namespace {

LogicalModule Module(int id, ModuleKind kind, double capacity, int contexts) {
  LogicalModule m;
  m.id = id;
  m.name = std::string(kind == ModuleKind::kAnalysis ? "A" : "R") + std::to_string(id);
  m.kind = kind;
  m.capacity_gbps = capacity;
  m.contexts = std::max(1, contexts);
  return m;
}

// Builds modules for a fixed edge list; nodes with out-edges are analysis.
AnnotatedGraph Assemble(int attack_id, int n, const std::vector<GraphEdge>& edges,
                        const std::vector<double>& capacity) {
  std::vector<int> out(n, 0);
  for (const GraphEdge& e : edges) ++out[e.from];
  std::vector<LogicalModule> nodes;
  for (int i = 0; i < n; ++i) {
    nodes.push_back(Module(i, out[i] > 0 ? ModuleKind::kAnalysis : ModuleKind::kResponse,
                           capacity[i], out[i]));
  }
  return AnnotatedGraph({attack_id, "attack" + std::to_string(attack_id)}, nodes, edges);
}

// Single node, chain of two or three, or a 50/50 fan-out.
AnnotatedGraph TinyGraph(Rng& rng, int attack_id) {
  const int n = rng.IntIn(1, 3);
  std::vector<double> capacity(n);
  for (double& c : capacity) c = rng.Bernoulli(0.5) ? 5.0 : 10.0;
  std::vector<GraphEdge> edges;
  if (n >= 2) {
    const bool fan_out = n == 3 && rng.Bernoulli(0.5);
    if (fan_out) {
      edges.push_back({0, 1, 0.5, 0});
      edges.push_back({0, 2, 0.5, 1});
    } else {
      const double w1 = rng.Bernoulli(0.5) ? 1.0 : 0.5;
      edges.push_back({0, 1, w1, 0});
      if (n == 3) edges.push_back({1, 2, rng.Bernoulli(0.5) ? w1 : w1 / 2, 0});
    }
  }
  return Assemble(attack_id, n, edges, capacity);
}

// Full-mesh backbone that never congests; latency drawn independently.
void MeshBackbone(Topology& topo, double capacity) {
  const int n = topo.NumPops();
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) topo.links.push_back({a, b, capacity});
  }
  for (int e = 0; e < n; ++e) {
    for (int d = 0; d < topo.NumDatacenters(); ++d) {
      topo.paths[{e, d}] = ShortestPathLinks(topo, e, topo.datacenters[d].attach_pop);
    }
  }
}

Datacenter RandomDatacenter(Rng& rng, int id, int n_pops, int max_racks,
                            int max_servers, int max_slots, double link) {
  Datacenter dc;
  dc.id = id;
  dc.attach_pop = rng.IntIn(0, n_pops - 1);
  dc.link_capacity_gbps = link;
  int server_id = 0;
  const int racks = rng.IntIn(1, max_racks);
  for (int r = 0; r < racks; ++r) {
    Rack rack;
    rack.id = r;
    const int servers = rng.IntIn(1, max_servers);
    for (int s = 0; s < servers; ++s) {
      rack.servers.push_back({server_id++, rng.IntIn(max_slots > 4 ? 0 : 1, max_slots)});
    }
    dc.racks.push_back(rack);
  }
  return dc;
}

}  // namespace

AnnotatedGraph RandomGraph(Rng& rng, int attack_id, int max_nodes) {
  const int n = rng.IntIn(1, std::max(1, max_nodes));
  std::vector<double> remaining(n, 0.0);
  std::vector<int> contexts_used(n, 0);
  remaining[0] = 1.0;
  std::vector<GraphEdge> edges;
  for (int j = 1; j < n; ++j) {
    std::vector<int> parents;
    for (int p = 0; p < j; ++p) {
      if (remaining[p] > 0.05) parents.push_back(p);
    }
    if (parents.empty()) {
      // Unassigned shares always sum to 1, so some node still has some.
      parents.push_back(static_cast<int>(
          std::max_element(remaining.begin(), remaining.begin() + j) - remaining.begin()));
    }
    const int p = parents[rng.Below(parents.size())];
    const double frac = (j == n - 1) ? 1.0 : 0.25 * rng.IntIn(1, 4);
    const double w = std::min(remaining[p], remaining[p] * frac);
    remaining[p] -= w;
    edges.push_back({p, j, w, contexts_used[p]++});
    remaining[j] = w;
  }
  std::vector<double> capacity(n);
  for (double& c : capacity) c = rng.Uniform(2.0, 20.0);
  return Assemble(attack_id, n, edges, capacity);
}

ProblemInstance RandomTinyInstance(std::uint64_t seed) {
  Rng rng(seed, 0x7199);
  ProblemInstance inst;
  const int n_pops = rng.IntIn(1, 3);
  const int n_dcs = rng.IntIn(1, 3);
  const int n_attacks = rng.IntIn(1, 2);
  for (int e = 0; e < n_pops; ++e) inst.topo.pops.push_back({e, "pop" + std::to_string(e)});
  for (int d = 0; d < n_dcs; ++d) {
    inst.topo.datacenters.push_back(
        RandomDatacenter(rng, d, n_pops, 2, 2, 4, rng.IntIn(5, 40)));
  }
  MeshBackbone(inst.topo, 1e6);
  inst.topo.latency.assign(n_pops, std::vector<double>(n_dcs));
  for (auto& row : inst.topo.latency) {
    for (double& l : row) l = rng.IntIn(0, 20);
  }
  for (int a = 0; a < n_attacks; ++a) inst.lib.push_back(TinyGraph(rng, a));
  inst.traffic = TrafficMatrix::Zero(n_pops, n_attacks);
  bool any = false;
  for (auto& row : inst.traffic.t) {
    for (double& v : row) {
      v = 10.0 * rng.IntIn(0, 2);
      any = any || v > 0.0;
    }
  }
  if (!any) inst.traffic.t[rng.Below(n_pops)][rng.Below(n_attacks)] = 10.0;
  inst.params.alpha = 1.0;
  inst.params.intra_unit_cost = 0.5;
  inst.params.inter_unit_cost = 1.0;
  inst.params.beta = 1.0;
  inst.topo.Validate();
  return inst;
}

ProblemInstance RandomMediumInstance(std::uint64_t seed) {
  Rng rng(seed, 0x3ED1);
  ProblemInstance inst;
  const int n_pops = rng.IntIn(3, 12);
  const int n_dcs = rng.IntIn(1, 4);
  const int n_attacks = rng.IntIn(1, 4);
  for (int e = 0; e < n_pops; ++e) inst.topo.pops.push_back({e, "pop" + std::to_string(e)});
  for (int d = 0; d < n_dcs; ++d) {
    inst.topo.datacenters.push_back(
        RandomDatacenter(rng, d, n_pops, 4, 4, 20, rng.Uniform(20.0, 200.0)));
  }
  // Random spanning tree plus a few chords.
  for (int v = 1; v < n_pops; ++v) {
    inst.topo.links.push_back({static_cast<int>(rng.Below(v)), v, 1e9});
  }
  for (int k = 0; k < n_pops / 3; ++k) {
    const int a = rng.IntIn(0, n_pops - 1);
    const int b = rng.IntIn(0, n_pops - 1);
    if (a != b) inst.topo.links.push_back({std::min(a, b), std::max(a, b), 1e9});
  }
  DeriveLatencyAndPaths(inst.topo, rng.Uniform(1.0, 10.0));
  for (int a = 0; a < n_attacks; ++a) inst.lib.push_back(RandomGraph(rng, a, 5));
  inst.traffic = TrafficMatrix::Zero(n_pops, n_attacks);
  for (auto& row : inst.traffic.t) {
    for (double& v : row) v = rng.Bernoulli(0.6) ? rng.Uniform(0.0, 40.0) : 0.0;
  }
  inst.params.alpha = rng.Uniform(0.5, 2.0);
  inst.params.intra_unit_cost = rng.Uniform(0.1, 1.0);
  inst.params.inter_unit_cost = inst.params.intra_unit_cost + rng.Uniform(0.0, 2.0);
  inst.params.beta = 1.0;
  inst.topo.Validate();
  return inst;
}

}  // namespace bohatei
