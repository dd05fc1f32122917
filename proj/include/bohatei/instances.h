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

#ifndef BOHATEI_INSTANCES_H_
#define BOHATEI_INSTANCES_H_

#include <cstdint>

#include "bohatei/defense_graph.h"
#include "bohatei/rng.h"
#include "bohatei/resource_manager.h"
#include "bohatei/topology.h"

namespace bohatei {

// Everything the resource manager needs for one decision.
struct ProblemInstance {
  Topology topo;
  TrafficMatrix traffic;
  GraphLibrary lib;
  CostParams params;
};

// Oracle-sized instance: <=3 pops, <=3 datacenters, <=2 attacks, <=3-node
// graphs, <=2x2 servers per datacenter. Volumes are 0/10/20 Gbps, link
// capacities whole Gbps and per-VM capacities 5 or 10 Gbps, so every volume
// the greedy can produce is a multiple of 0.05 of its source cell.
ProblemInstance RandomTinyInstance(std::uint64_t seed);

// Medium random instance (up to a dozen pops, four datacenters, random
// graphs) with a backbone that never congests. Capacities may be short, in
// which case the greedy leaves volume in t_left.
ProblemInstance RandomMediumInstance(std::uint64_t seed);

// Random validated DAG with up to max_nodes nodes.
AnnotatedGraph RandomGraph(Rng& rng, int attack_id, int max_nodes);

}  // namespace bohatei

#endif  // BOHATEI_INSTANCES_H_
