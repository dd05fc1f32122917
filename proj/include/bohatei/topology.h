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

#ifndef BOHATEI_TOPOLOGY_H_
#define BOHATEI_TOPOLOGY_H_

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace bohatei {

struct Pop {
  int id = 0;
  std::string name;
};

struct Server {
  int id = 0;  // unique within its datacenter
  int vm_slots = 0;
};

struct Rack {
  int id = 0;
  std::vector<Server> servers;
};

struct Datacenter {
  int id = 0;
  double link_capacity_gbps = 0.0;
  std::vector<Rack> racks;
  int attach_pop = 0;

  int ComputeCapacity() const;
  int ServerCount() const;
  // Server ids are dense in rack order; this maps a server id to its rack.
  int RackOfServer(int server_id) const;
  const Server& ServerById(int server_id) const;
};

struct BackboneLink {
  int a = 0;
  int b = 0;
  double capacity_gbps = 0.0;
};

// The ISP substrate. Backbone nodes are the PoPs; datacenters hang off a PoP.
struct Topology {
  std::vector<Pop> pops;
  std::vector<Datacenter> datacenters;
  // latency[e][d]: cost units per Gbps shipped from PoP e to datacenter d.
  std::vector<std::vector<double>> latency;
  std::vector<BackboneLink> links;
  // (e, d) -> ordered backbone link indices from e to d's attach PoP.
  std::map<std::pair<int, int>, std::vector<int>> paths;
  // Messages about parameters the generator had to clamp.
  std::vector<std::string> notes;

  int NumPops() const { return static_cast<int>(pops.size()); }
  int NumDatacenters() const { return static_cast<int>(datacenters.size()); }

  // Throws InputError if any structural invariant is broken.
  void Validate() const;
};

// Weights for the objective. inter_unit_cost >= intra_unit_cost, beta in (0,1].
struct CostParams {
  double alpha = 1.0;
  double intra_unit_cost = 1.0;
  double inter_unit_cost = 2.0;
  double beta = 1.0;

  void Validate() const;
};

struct GeneratorOptions {
  int racks_per_dc = 10;
  int servers_per_rack = 10;
  double hop_cost = 10.0;
  double dc_link_capacity_gbps = 200.0;
  double backbone_capacity_gbps = 400.0;
};

// Random geometric backbone with max(1, round(0.05 * n)) datacenters, each
// carrying dc_slot_capacity VM slots spread evenly over its servers.
Topology GenerateTopology(int n_backbone, int dc_slot_capacity,
                          std::uint64_t seed,
                          const GeneratorOptions& options = {});

double LatencyCost(const Topology& topo, int pop, int dc);

// Undirected hop distances over the backbone; -1 marks unreachable nodes.
std::vector<int> HopDistances(const Topology& topo, int source);

// Shortest-path link sequence (ties broken toward lower node ids).
std::vector<int> ShortestPathLinks(const Topology& topo, int source, int target);

// Recomputes latency and paths from the backbone graph.
void DeriveLatencyAndPaths(Topology& topo, double hop_cost);

struct PathCostComparison {
  long hops_central = 0;
  long hops_distributed = 0;
};

// Compares total path length when every flow is way-pointed through a fixed
// chokepoint against routing each flow through its best defense site (any
// datacenter attach point or the chokepoint itself).
PathCostComparison ComparePathCosts(const Topology& topo,
                                    const std::vector<std::pair<int, int>>& flows,
                                    int chokepoint);

}  // namespace bohatei

#endif  // BOHATEI_TOPOLOGY_H_
