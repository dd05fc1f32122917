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

#ifndef BOHATEI_ORACLE_H_
#define BOHATEI_ORACLE_H_

#include <string>
#include <vector>

#include "bohatei/defense_graph.h"
#include "bohatei/resource_manager.h"
#include "bohatei/topology.h"

namespace bohatei {

struct OracleLimits {
  int max_pops = 3;
  int max_dcs = 3;
  int max_attacks = 2;
  int max_nodes = 3;
  int max_servers_per_dc = 4;
  // Bound on (per-datacenter volume vectors of attack 0) x (of attack 1).
  double max_pairs = 4e8;
  // Bound on the placement search state space for one datacenter.
  long max_placement_states = 200000;
};

// Exhaustive search space: each f[e][a][d] ranges over multiples of delta
// (1/delta must be an integer) and every VM placement is considered.
struct OracleInstance {
  double delta = 0.05;
  OracleLimits limits;
};

struct OracleResult {
  double objective = 0.0;  // alpha * wide-area + intra-datacenter cost
  double handled = 0.0;    // Gbps assigned to datacenters
  double wide_area_cost = 0.0;
  double dc_cost = 0.0;
  std::vector<std::vector<std::vector<double>>> f;          // [e][a][d]
  std::vector<std::vector<std::vector<int>>> n_dc;          // [d][a][i]
  std::vector<std::vector<std::vector<std::vector<int>>>> n_srv;  // [d][s][a][i]
  long candidates_evaluated = 0;
};

// Lexicographic optimum over the discretized space: most volume handled,
// then least cost. Throws OracleRefusal when the instance exceeds the
// limits, or when a backbone link could bind (the search aggregates volumes
// per datacenter and does not track per-link load).
OracleResult OracleExact(const OracleInstance& inst, const Topology& topo,
                         const TrafficMatrix& traffic, const GraphLibrary& lib,
                         const CostParams& params);

// Minimum intra-datacenter cost of placing the given VM counts, by dynamic
// programming over racks and servers. volume[a] is attack a's input in this
// datacenter, counts[a][i] its VM counts. Returns +inf when the VMs do not
// fit; `placement` receives [server][a][i] counts when non-null.
double MinPlacementCost(const Datacenter& dc, const GraphLibrary& lib,
                        const std::vector<double>& volume,
                        const std::vector<std::vector<int>>& counts,
                        const CostParams& params,
                        std::vector<std::vector<std::vector<int>>>* placement,
                        long max_states = 200000);

}  // namespace bohatei

#endif  // BOHATEI_ORACLE_H_
