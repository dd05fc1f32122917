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

#include "bohatei/topology.h"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <limits>
#include <numbers>
#include <numeric>
#include <set>

#include "bohatei/errors.h"
#include "bohatei/rng.h"

namespace bohatei {

int Datacenter::ComputeCapacity() const {
  int total = 0;
  for (const Rack& rack : racks) {
    for (const Server& s : rack.servers) total += s.vm_slots;
  }
  return total;
}

int Datacenter::ServerCount() const {
  int total = 0;
  for (const Rack& rack : racks) total += static_cast<int>(rack.servers.size());
  return total;
}

int Datacenter::RackOfServer(int server_id) const {
  for (std::size_t r = 0; r < racks.size(); ++r) {
    for (const Server& s : racks[r].servers) {
      if (s.id == server_id) return static_cast<int>(r);
    }
  }
  throw InputError("datacenter " + std::to_string(id) + " has no server " +
                   std::to_string(server_id));
}

const Server& Datacenter::ServerById(int server_id) const {
  for (const Rack& rack : racks) {
    for (const Server& s : rack.servers) {
      if (s.id == server_id) return s;
    }
  }
  throw InputError("datacenter " + std::to_string(id) + " has no server " +
                   std::to_string(server_id));
}

void Topology::Validate() const {
  const int n_pops = NumPops();
  const int n_dcs = NumDatacenters();
  for (int e = 0; e < n_pops; ++e) {
    if (pops[e].id != e) throw InputError("pop ids must be dense from 0");
  }
  for (int d = 0; d < n_dcs; ++d) {
    const Datacenter& dc = datacenters[d];
    if (dc.id != d) throw InputError("datacenter ids must be dense from 0");
    if (!(dc.link_capacity_gbps >= 0.0)) {
      throw InputError("datacenter " + std::to_string(d) +
                       " has negative link capacity");
    }
    if (dc.attach_pop < 0 || dc.attach_pop >= n_pops) {
      throw InputError("datacenter " + std::to_string(d) +
                       " attaches to unknown pop");
    }
    int expected_server = 0;
    for (const Rack& rack : dc.racks) {
      if (rack.servers.empty()) {
        throw InputError("datacenter " + std::to_string(d) + " has an empty rack");
      }
      for (const Server& s : rack.servers) {
        if (s.vm_slots < 0) throw InputError("negative vm_slots");
        if (s.id != expected_server++) {
          throw InputError("server ids must be dense per datacenter");
        }
      }
    }
  }
  if (static_cast<int>(latency.size()) != n_pops) {
    throw InputError("latency matrix row count does not match pops");
  }
  for (const auto& row : latency) {
    if (static_cast<int>(row.size()) != n_dcs) {
      throw InputError("latency matrix column count does not match datacenters");
    }
    for (double v : row) {
      if (!std::isfinite(v) || v < 0.0) {
        throw InputError("latency entries must be finite and nonnegative");
      }
    }
  }
  for (const BackboneLink& link : links) {
    if (link.a < 0 || link.a >= n_pops || link.b < 0 || link.b >= n_pops) {
      throw InputError("backbone link references unknown node");
    }
    if (!(link.capacity_gbps >= 0.0)) throw InputError("negative link capacity");
  }
  for (int e = 0; e < n_pops; ++e) {
    for (int d = 0; d < n_dcs; ++d) {
      auto it = paths.find({e, d});
      if (it == paths.end()) {
        throw InputError("missing path for pop " + std::to_string(e) + " -> dc " +
                         std::to_string(d));
      }
      for (int l : it->second) {
        if (l < 0 || l >= static_cast<int>(links.size())) {
          throw InputError("path references unknown link");
        }
      }
    }
  }
}

void CostParams::Validate() const {
  if (!(alpha > 0.0)) throw InputError("alpha must be > 0");
  if (!(intra_unit_cost >= 0.0)) throw InputError("intra_unit_cost must be >= 0");
  if (!(inter_unit_cost >= intra_unit_cost)) {
    throw InputError("inter_unit_cost must be >= intra_unit_cost");
  }
  if (!(beta > 0.0 && beta <= 1.0)) throw InputError("beta must be in (0, 1]");
}

namespace {

std::vector<std::vector<std::pair<int, int>>> Adjacency(const Topology& topo) {
  // neighbor, link index; sorted so BFS tie-breaks toward low ids.
  std::vector<std::vector<std::pair<int, int>>> adj(topo.pops.size());
  for (int l = 0; l < static_cast<int>(topo.links.size()); ++l) {
    const BackboneLink& link = topo.links[l];
    adj[link.a].push_back({link.b, l});
    adj[link.b].push_back({link.a, l});
  }
  for (auto& row : adj) std::sort(row.begin(), row.end());
  return adj;
}

void CheckNode(const Topology& topo, int node) {
  if (node < 0 || node >= topo.NumPops()) {
    throw InputError("node " + std::to_string(node) + " out of range");
  }
}

}  // namespace

std::vector<int> HopDistances(const Topology& topo, int source) {
  CheckNode(topo, source);
  const auto adj = Adjacency(topo);
  std::vector<int> dist(topo.pops.size(), -1);
  std::deque<int> queue{source};
  dist[source] = 0;
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    for (auto [v, l] : adj[u]) {
      if (dist[v] < 0) {
        dist[v] = dist[u] + 1;
        queue.push_back(v);
      }
    }
  }
  return dist;
}

std::vector<int> ShortestPathLinks(const Topology& topo, int source, int target) {
  CheckNode(topo, source);
  CheckNode(topo, target);
  const auto adj = Adjacency(topo);
  std::vector<int> parent_link(topo.pops.size(), -1);
  std::vector<int> parent(topo.pops.size(), -1);
  std::vector<bool> seen(topo.pops.size(), false);
  std::deque<int> queue{source};
  seen[source] = true;
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    if (u == target) break;
    for (auto [v, l] : adj[u]) {
      if (!seen[v]) {
        seen[v] = true;
        parent[v] = u;
        parent_link[v] = l;
        queue.push_back(v);
      }
    }
  }
  if (!seen[target]) {
    throw InputError("node " + std::to_string(target) + " unreachable from " +
                     std::to_string(source));
  }
  std::vector<int> path;
  for (int v = target; v != source; v = parent[v]) path.push_back(parent_link[v]);
  std::reverse(path.begin(), path.end());
  return path;
}

void DeriveLatencyAndPaths(Topology& topo, double hop_cost) {
  const int n_pops = topo.NumPops();
  const int n_dcs = topo.NumDatacenters();
  topo.latency.assign(n_pops, std::vector<double>(n_dcs, 0.0));
  topo.paths.clear();
  for (int d = 0; d < n_dcs; ++d) {
    const int site = topo.datacenters[d].attach_pop;
    const std::vector<int> dist = HopDistances(topo, site);
    for (int e = 0; e < n_pops; ++e) {
      if (dist[e] < 0) {
        throw InputError("pop " + std::to_string(e) + " cannot reach datacenter " +
                         std::to_string(d));
      }
      topo.latency[e][d] = dist[e] * hop_cost;
      topo.paths[{e, d}] = ShortestPathLinks(topo, e, site);
    }
  }
}

Topology GenerateTopology(int n_backbone, int dc_slot_capacity,
                          std::uint64_t seed, const GeneratorOptions& options) {
  Topology topo;
  if (n_backbone < 2) {
    topo.notes.push_back("n_backbone " + std::to_string(n_backbone) +
                         " clamped to 2");
    n_backbone = 2;
  }
  if (dc_slot_capacity < 0) {
    topo.notes.push_back("dc_slot_capacity " + std::to_string(dc_slot_capacity) +
                         " clamped to 0");
    dc_slot_capacity = 0;
  }
  const int racks_per_dc = std::max(1, options.racks_per_dc);
  const int servers_per_rack = std::max(1, options.servers_per_rack);

  Rng rng(seed, /*stream=*/1);
  std::vector<std::pair<double, double>> pos(n_backbone);
  for (auto& p : pos) p = {rng.Uniform(), rng.Uniform()};
  for (int i = 0; i < n_backbone; ++i) {
    topo.pops.push_back({i, "pop" + std::to_string(i)});
  }

  auto dist2 = [&](int i, int j) {
    const double dx = pos[i].first - pos[j].first;
    const double dy = pos[i].second - pos[j].second;
    return dx * dx + dy * dy;
  };
  const double radius =
      1.5 * std::sqrt(std::log(static_cast<double>(n_backbone)) /
                      (std::numbers::pi * static_cast<double>(n_backbone)));
  for (int i = 0; i < n_backbone; ++i) {
    for (int j = i + 1; j < n_backbone; ++j) {
      if (dist2(i, j) <= radius * radius) {
        topo.links.push_back({i, j, options.backbone_capacity_gbps});
      }
    }
  }

  // Join components by their geometrically closest node pair until connected.
  std::vector<int> comp(n_backbone);
  auto label_components = [&]() {
    std::iota(comp.begin(), comp.end(), 0);
    std::function<int(int)> find = [&](int x) {
      return comp[x] == x ? x : comp[x] = find(comp[x]);
    };
    for (const BackboneLink& l : topo.links) comp[find(l.a)] = find(l.b);
    for (int i = 0; i < n_backbone; ++i) comp[i] = find(i);
  };
  label_components();
  while (std::any_of(comp.begin(), comp.end(), [&](int c) { return c != comp[0]; })) {
    int best_i = -1, best_j = -1;
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n_backbone; ++i) {
      if (comp[i] != comp[0]) continue;
      for (int j = 0; j < n_backbone; ++j) {
        if (comp[j] == comp[0]) continue;
        if (dist2(i, j) < best) {
          best = dist2(i, j);
          best_i = i;
          best_j = j;
        }
      }
    }
    topo.links.push_back({std::min(best_i, best_j), std::max(best_i, best_j),
                          options.backbone_capacity_gbps});
    label_components();
  }

  const int n_dcs = std::max(1, static_cast<int>(std::lround(0.05 * n_backbone)));
  std::vector<int> sites(n_backbone);
  std::iota(sites.begin(), sites.end(), 0);
  rng.Shuffle(sites);
  sites.resize(n_dcs);
  std::sort(sites.begin(), sites.end());

  const int n_servers = racks_per_dc * servers_per_rack;
  for (int d = 0; d < n_dcs; ++d) {
    Datacenter dc;
    dc.id = d;
    dc.link_capacity_gbps = options.dc_link_capacity_gbps;
    dc.attach_pop = sites[d];
    int server_id = 0;
    for (int r = 0; r < racks_per_dc; ++r) {
      Rack rack{r, {}};
      for (int s = 0; s < servers_per_rack; ++s, ++server_id) {
        const int slots = dc_slot_capacity / n_servers +
                          (server_id < dc_slot_capacity % n_servers ? 1 : 0);
        rack.servers.push_back({server_id, slots});
      }
      dc.racks.push_back(std::move(rack));
    }
    topo.datacenters.push_back(std::move(dc));
  }
  DeriveLatencyAndPaths(topo, options.hop_cost);
  return topo;
}

double LatencyCost(const Topology& topo, int pop, int dc) {
  if (pop < 0 || pop >= topo.NumPops() || dc < 0 || dc >= topo.NumDatacenters()) {
    throw InputError("latency index (" + std::to_string(pop) + ", " +
                     std::to_string(dc) + ") out of range");
  }
  return topo.latency[pop][dc];
}

PathCostComparison ComparePathCosts(const Topology& topo,
                                    const std::vector<std::pair<int, int>>& flows,
                                    int chokepoint) {
  if (flows.empty()) throw InputError("flows must be nonempty");
  CheckNode(topo, chokepoint);
  std::set<int> sites{chokepoint};
  for (const Datacenter& dc : topo.datacenters) sites.insert(dc.attach_pop);

  std::map<int, std::vector<int>> dist;
  auto from = [&](int node) -> const std::vector<int>& {
    auto it = dist.find(node);
    if (it == dist.end()) it = dist.emplace(node, HopDistances(topo, node)).first;
    return it->second;
  };
  auto hops = [&](int a, int b) {
    const int h = from(a)[b];
    if (h < 0) {
      throw InputError("node " + std::to_string(b) + " disconnected from " +
                       std::to_string(a));
    }
    return h;
  };

  PathCostComparison out;
  for (auto [src, dst] : flows) {
    CheckNode(topo, src);
    CheckNode(topo, dst);
    out.hops_central += hops(src, chokepoint) + hops(chokepoint, dst);
    int best = std::numeric_limits<int>::max();
    for (int site : sites) best = std::min(best, hops(src, site) + hops(site, dst));
    out.hops_distributed += best;
  }
  return out;
}

}  // namespace bohatei
