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

#include "bohatei/resource_manager.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <sstream>
#include <tuple>

#include "bohatei/errors.h"

namespace bohatei {
namespace {

// Capacity below this many Gbps counts as exhausted.
constexpr double kCapacityEpsilon = 1e-9;

double Tolerance(double scale) { return 1e-7 * std::max(1.0, std::abs(scale)); }

}  // namespace

TrafficMatrix TrafficMatrix::Zero(int n_pops, int n_attacks) {
  return TrafficMatrix{std::vector<std::vector<double>>(
      n_pops, std::vector<double>(n_attacks, 0.0))};
}

double TrafficMatrix::Total() const {
  double total = 0.0;
  for (const auto& row : t) total += std::accumulate(row.begin(), row.end(), 0.0);
  return total;
}

void TrafficMatrix::Validate(int n_pops, int n_attacks) const {
  if (NumPops() != n_pops) {
    throw InputError("traffic matrix has " + std::to_string(NumPops()) +
                     " rows, topology has " + std::to_string(n_pops) + " pops");
  }
  for (const auto& row : t) {
    if (static_cast<int>(row.size()) != n_attacks) {
      throw InputError("traffic matrix column count must equal attack count " +
                       std::to_string(n_attacks));
    }
    for (double v : row) {
      if (!(v >= 0.0) || !std::isfinite(v)) {
        throw InputError("traffic volumes must be finite and >= 0");
      }
    }
  }
}

int PhysicalGraph::TotalVms() const {
  return std::accumulate(vm_count.begin(), vm_count.end(), 0);
}

bool PhysicalGraph::Placed() const {
  return std::all_of(instances.begin(), instances.end(),
                     [](const VmInstance& vm) { return vm.server >= 0; });
}

std::vector<const VmInstance*> PhysicalGraph::InstancesOf(int node) const {
  std::vector<const VmInstance*> out;
  for (const VmInstance& vm : instances) {
    if (vm.node == node) out.push_back(&vm);
  }
  return out;
}

void PhysicalGraph::Validate(const AnnotatedGraph& g) const {
  if (static_cast<int>(vm_count.size()) != g.NumNodes()) {
    throw InputError("physical graph node count mismatch");
  }
  std::vector<int> seen(g.NumNodes(), 0);
  for (const VmInstance& vm : instances) {
    if (vm.node < 0 || vm.node >= g.NumNodes()) {
      throw InputError("vm instance references unknown logical node");
    }
    ++seen[vm.node];
  }
  if (seen != vm_count) throw InputError("vm_count disagrees with instance list");
}

PhysicalGraph MakePhysicalGraph(int attack, int dc, double input_gbps,
                                const std::vector<int>& vm_count) {
  PhysicalGraph pg;
  pg.attack = attack;
  pg.dc = dc;
  pg.input_gbps = input_gbps;
  pg.vm_count = vm_count;
  int next_id = 0;
  for (int i = 0; i < static_cast<int>(vm_count.size()); ++i) {
    for (int k = 0; k < vm_count[i]; ++k) pg.instances.push_back({next_id++, i, -1});
  }
  return pg;
}

double DspResult::HandledVolume(const TrafficMatrix& traffic) const {
  double handled = 0.0;
  for (std::size_t e = 0; e < f.size(); ++e) {
    for (std::size_t a = 0; a < f[e].size(); ++a) {
      for (double frac : f[e][a]) handled += frac * traffic.t[e][a];
    }
  }
  return handled;
}

double DspResult::AssignedVolume(const TrafficMatrix& traffic, int a, int d) const {
  double v = 0.0;
  for (std::size_t e = 0; e < f.size(); ++e) v += f[e][a][d] * traffic.t[e][a];
  return v;
}

int DspResult::TotalVms() const {
  int total = 0;
  for (const auto& per_dc : n_dc) {
    for (const auto& per_attack : per_dc) {
      total += std::accumulate(per_attack.begin(), per_attack.end(), 0);
    }
  }
  return total;
}

namespace {

struct HeapItem {
  double volume;
  int e;
  int a;
};

// Max-heap on volume; equal volumes pop lowest (e, a) first.
struct HeapOrder {
  bool operator()(const HeapItem& x, const HeapItem& y) const {
    if (x.volume != y.volume) return x.volume < y.volume;
    return std::tie(x.e, x.a) > std::tie(y.e, y.a);
  }
};

// Largest extra volume of one attack a datacenter can absorb while the
// integer VM counts of all its graphs still fit the datacenter's slots.
// demand[i] holds the node's current (possibly fractional) VM demand and
// factor[i] the VMs needed per extra Gbps. `budget` is the slot count left
// for this attack including what its current VMs already occupy.
double MaxAdmissibleVolume(const std::vector<double>& demand,
                           const std::vector<double>& factor, int budget) {
  double sum_demand = 0.0, sum_factor = 0.0;
  int active = 0;
  for (std::size_t i = 0; i < demand.size(); ++i) {
    if (factor[i] <= 0.0) continue;
    sum_demand += demand[i];
    sum_factor += factor[i];
    ++active;
  }
  if (active == 0) return std::numeric_limits<double>::infinity();
  auto slots_at = [&](double t) {
    long total = 0;
    for (std::size_t i = 0; i < demand.size(); ++i) {
      total += CeilVms(demand[i] + t * factor[i]);
    }
    return total;
  };
  if (slots_at(0.0) > budget) return 0.0;
  // Sum of ceilings lies in [sum, sum + active), which brackets the answer.
  const double t_high = (budget - sum_demand) / sum_factor;
  const double t_low = std::max(0.0, (budget - active - sum_demand) / sum_factor);
  if (t_high <= 0.0) return 0.0;
  double best = slots_at(t_low) <= budget ? t_low : 0.0;
  if (slots_at(t_high) <= budget) return t_high;
  for (std::size_t i = 0; i < demand.size(); ++i) {
    if (factor[i] <= 0.0) continue;
    const long k_first = static_cast<long>(std::ceil(demand[i] + t_low * factor[i]));
    const long k_last = static_cast<long>(std::floor(demand[i] + t_high * factor[i]));
    for (long k = k_first; k <= k_last; ++k) {
      const double t = (static_cast<double>(k) - demand[i]) / factor[i];
      if (t > best && t <= t_high && slots_at(t) <= budget) best = t;
    }
  }
  return best;
}

}  // namespace

DspResult DspGreedy(const Topology& topo, const TrafficMatrix& traffic,
                    const GraphLibrary& lib, const DspOptions& options) {
  const int n_pops = topo.NumPops();
  const int n_dcs = topo.NumDatacenters();
  const int n_attacks = static_cast<int>(lib.size());
  traffic.Validate(n_pops, n_attacks);

  DspResult out;
  out.f.assign(n_pops, std::vector<std::vector<double>>(
                           n_attacks, std::vector<double>(n_dcs, 0.0)));
  out.fractional_vms.resize(n_dcs);
  for (int d = 0; d < n_dcs; ++d) {
    for (int a = 0; a < n_attacks; ++a) {
      out.fractional_vms[d].emplace_back(lib[a].NumNodes(), 0.0);
    }
  }

  std::vector<std::vector<double>> factor(n_attacks);
  for (int a = 0; a < n_attacks; ++a) {
    for (int i = 0; i < lib[a].NumNodes(); ++i) {
      factor[a].push_back(lib[a].NodeVmFactor(i));
    }
  }
  std::vector<double> link_left(n_dcs);
  std::vector<int> slots(n_dcs);
  for (int d = 0; d < n_dcs; ++d) {
    link_left[d] = topo.datacenters[d].link_capacity_gbps;
    slots[d] = topo.datacenters[d].ComputeCapacity();
  }
  auto slots_used_by = [&](int d, int a) {
    int used = 0;
    for (double x : out.fractional_vms[d][a]) used += CeilVms(x);
    return used;
  };

  // Datacenters per pop in order of increasing cost, lowest id on ties.
  std::vector<std::vector<int>> preference(n_pops);
  for (int e = 0; e < n_pops; ++e) {
    preference[e].resize(n_dcs);
    std::iota(preference[e].begin(), preference[e].end(), 0);
    std::stable_sort(preference[e].begin(), preference[e].end(), [&](int x, int y) {
      return topo.latency[e][x] < topo.latency[e][y];
    });
  }

  std::priority_queue<HeapItem, std::vector<HeapItem>, HeapOrder> heap;
  for (int e = 0; e < n_pops; ++e) {
    for (int a = 0; a < n_attacks; ++a) {
      if (traffic.t[e][a] > 0.0) heap.push({traffic.t[e][a], e, a});
    }
  }

  while (!heap.empty()) {
    const HeapItem item = heap.top();
    heap.pop();
    ++out.iterations;
    int chosen = -1;
    double assigned = 0.0;
    for (int d : preference[item.e]) {
      if (link_left[d] <= kCapacityEpsilon) continue;
      const double t1 = std::min(item.volume, link_left[d]);
      int other_attacks = 0;
      for (int a = 0; a < n_attacks; ++a) {
        if (a != item.a) other_attacks += slots_used_by(d, a);
      }
      const double t2 = MaxAdmissibleVolume(out.fractional_vms[d][item.a],
                                            factor[item.a], slots[d] - other_attacks);
      const double t = std::min(t1, t2);
      if (t > kCapacityEpsilon) {
        chosen = d;
        assigned = t;
        break;
      }
    }
    if (chosen < 0) {
      out.t_left += item.volume;
      continue;
    }
    const int d = chosen;
    out.f[item.e][item.a][d] += assigned / traffic.t[item.e][item.a];
    for (std::size_t i = 0; i < factor[item.a].size(); ++i) {
      const double extra = assigned * factor[item.a][i];
      out.fractional_vms[d][item.a][i] +=
          options.ceil_per_assignment ? CeilVms(extra) : extra;
    }
    link_left[d] -= assigned;
    out.wide_area_cost += assigned * topo.latency[item.e][d];
    const double leftover = item.volume - assigned;
    if (leftover > kCapacityEpsilon) heap.push({leftover, item.e, item.a});
  }

  out.n_dc.resize(n_dcs);
  for (int d = 0; d < n_dcs; ++d) {
    for (int a = 0; a < n_attacks; ++a) {
      std::vector<int> counts;
      for (double x : out.fractional_vms[d][a]) counts.push_back(CeilVms(x));
      const double volume = out.AssignedVolume(traffic, a, d);
      if (volume > 0.0 ||
          std::any_of(counts.begin(), counts.end(), [](int c) { return c > 0; })) {
        out.physical.emplace(std::make_pair(a, d), MakePhysicalGraph(a, d, volume, counts));
      }
      out.n_dc[d].push_back(std::move(counts));
    }
  }
  return out;
}

PlacementUnits ComputePlacementUnits(const Datacenter& dc, const PhysicalGraph& pg,
                                     const AnnotatedGraph& g) {
  const int n_servers = dc.ServerCount();
  std::vector<int> rack_of(n_servers);
  for (int s = 0; s < n_servers; ++s) rack_of[s] = dc.RackOfServer(s);
  const int n_racks = static_cast<int>(dc.racks.size());

  // per_server[i][s], per_rack[i][r]
  std::vector<std::vector<double>> per_server(g.NumNodes(),
                                              std::vector<double>(n_servers, 0.0));
  std::vector<std::vector<double>> per_rack(g.NumNodes(),
                                            std::vector<double>(n_racks, 0.0));
  for (const VmInstance& vm : pg.instances) {
    if (vm.server < 0) throw InputError("placement units need a placed graph");
    per_server[vm.node][vm.server] += 1.0;
    per_rack[vm.node][rack_of[vm.server]] += 1.0;
  }
  PlacementUnits units;
  for (const GraphEdge& edge : g.edges()) {
    const double n_from = pg.vm_count[edge.from];
    const double n_to = pg.vm_count[edge.to];
    const double w = pg.input_gbps * edge.weight;
    if (n_from == 0 || n_to == 0 || w <= 0.0) continue;
    double same_server = 0.0, same_rack = 0.0;
    for (int s = 0; s < n_servers; ++s) {
      same_server += per_server[edge.from][s] * per_server[edge.to][s];
    }
    for (int r = 0; r < n_racks; ++r) {
      same_rack += per_rack[edge.from][r] * per_rack[edge.to][r];
    }
    const double pairs = n_from * n_to;
    units.intra_rack += w * (same_rack - same_server) / pairs;
    units.inter_rack += w * (pairs - same_rack) / pairs;
  }
  return units;
}

namespace {

class ServerSelector {
 public:
  explicit ServerSelector(const Datacenter& dc) : dc_(dc) {
    free_.resize(dc.ServerCount());
    rack_of_.resize(dc.ServerCount());
    for (int r = 0; r < static_cast<int>(dc.racks.size()); ++r) {
      for (const Server& s : dc.racks[r].servers) {
        free_[s.id] = s.vm_slots;
        rack_of_[s.id] = r;
      }
    }
  }

  void Commit(const std::vector<int>& picks) {
    for (int s : picks) --free_[s];
  }

  int TotalFree() const { return std::accumulate(free_.begin(), free_.end(), 0); }

  int RackFree(int r) const {
    int total = 0;
    for (const Server& s : dc_.racks[r].servers) total += free_[s.id];
    return total;
  }

  // Returns the server chosen for each of the n VMs, in fill order.
  // affinity[s] counts predecessor VMs already on server s.
  std::vector<int> Localize(int n, const std::vector<int>& affinity) {
    const int n_servers = static_cast<int>(free_.size());
    std::vector<int> servers(n_servers);
    std::iota(servers.begin(), servers.end(), 0);
    auto by_affinity = [&](int x, int y) {
      return std::make_tuple(-affinity[x], -free_[x], x) <
             std::make_tuple(-affinity[y], -free_[y], y);
    };

    // 1. A server that already hosts predecessors.
    std::vector<int> ordered = servers;
    std::sort(ordered.begin(), ordered.end(), by_affinity);
    for (int s : ordered) {
      if (affinity[s] > 0 && free_[s] >= n) return std::vector<int>(n, s);
    }
    // 2. The emptiest server.
    int emptiest = 0;
    for (int s = 1; s < n_servers; ++s) {
      if (free_[s] > free_[emptiest]) emptiest = s;
    }
    if (n_servers > 0 && free_[emptiest] >= n) return std::vector<int>(n, emptiest);

    // 3. One rack: predecessor racks first, then the emptiest rack.
    const int n_racks = static_cast<int>(dc_.racks.size());
    std::vector<int> rack_affinity(n_racks, 0), racks(n_racks);
    for (int s = 0; s < n_servers; ++s) rack_affinity[rack_of_[s]] += affinity[s];
    std::iota(racks.begin(), racks.end(), 0);
    std::sort(racks.begin(), racks.end(), [&](int x, int y) {
      return std::make_tuple(-rack_affinity[x], -RackFree(x), x) <
             std::make_tuple(-rack_affinity[y], -RackFree(y), y);
    });
    for (int r : racks) {
      if (RackFree(r) >= n) return FillServers(n, RackServers(r), by_affinity);
    }
    // 4. Spread across racks, emptiest racks first.
    std::sort(racks.begin(), racks.end(), [&](int x, int y) {
      return std::make_pair(-RackFree(x), x) < std::make_pair(-RackFree(y), y);
    });
    std::vector<int> all;
    for (int r : racks) {
      std::vector<int> in_rack = RackServers(r);
      std::sort(in_rack.begin(), in_rack.end(), [&](int x, int y) {
        return std::make_pair(-free_[x], x) < std::make_pair(-free_[y], y);
      });
      all.insert(all.end(), in_rack.begin(), in_rack.end());
    }
    return FillServers(n, all, nullptr);
  }

 private:
  std::vector<int> RackServers(int r) const {
    std::vector<int> out;
    for (const Server& s : dc_.racks[r].servers) out.push_back(s.id);
    return out;
  }

  template <typename Order>
  std::vector<int> FillServers(int n, std::vector<int> candidates, Order order) {
    if constexpr (!std::is_same_v<Order, std::nullptr_t>) {
      std::sort(candidates.begin(), candidates.end(), order);
    }
    std::vector<int> out;
    for (int s : candidates) {
      while (static_cast<int>(out.size()) < n && free_[s] - Taken(out, s) > 0) {
        out.push_back(s);
      }
    }
    return out;
  }

  static int Taken(const std::vector<int>& picks, int s) {
    return static_cast<int>(std::count(picks.begin(), picks.end(), s));
  }

  const Datacenter& dc_;
  std::vector<int> free_;
  std::vector<int> rack_of_;
};

}  // namespace

SspResult SspGreedy(const Datacenter& dc, const std::vector<PhysicalGraph>& graphs,
                    const GraphLibrary& lib) {
  const int n_attacks = static_cast<int>(lib.size());
  SspResult out;
  out.dc = dc.id;
  out.n_srv.assign(dc.ServerCount(), std::vector<std::vector<int>>(n_attacks));
  for (int s = 0; s < dc.ServerCount(); ++s) {
    for (int a = 0; a < n_attacks; ++a) out.n_srv[s][a].assign(lib[a].NumNodes(), 0);
  }
  ServerSelector selector(dc);

  for (const PhysicalGraph& input : graphs) {
    if (input.attack < 0 || input.attack >= n_attacks) {
      throw InputError("physical graph references unknown attack");
    }
    const AnnotatedGraph& g = lib[input.attack];
    input.Validate(g);
    PhysicalGraph pg = input;
    std::vector<bool> placed(g.NumNodes(), false);
    for (int i = 0; i < g.NumNodes(); ++i) placed[i] = pg.vm_count[i] == 0;

    while (!std::all_of(placed.begin(), placed.end(), [](bool p) { return p; })) {
      int next = -1;
      for (int i = 0; i < g.NumNodes() && next < 0; ++i) {
        if (placed[i]) continue;
        const auto& preds = g.Predecessors(i);
        if (std::all_of(preds.begin(), preds.end(), [&](int p) { return placed[p]; })) {
          next = i;
        }
      }
      if (next < 0) {
        for (int i = 0; i < g.NumNodes(); ++i) {
          if (!placed[i] && (next < 0 || g.node(i).capacity_gbps >
                                             g.node(next).capacity_gbps)) {
            next = i;
          }
        }
      }
      const int n = pg.vm_count[next];
      if (selector.TotalFree() < n) {
        throw InfeasibleError("datacenter " + std::to_string(dc.id) + ": no room for " +
                                  std::to_string(n) + " VMs of " + g.attack().name +
                                  "/" + g.node(next).name,
                              input.attack, next);
      }
      std::vector<int> affinity(dc.ServerCount(), 0);
      for (int p : g.Predecessors(next)) {
        for (const VmInstance& vm : pg.instances) {
          if (vm.node == p && vm.server >= 0) ++affinity[vm.server];
        }
      }
      const std::vector<int> picks = selector.Localize(n, affinity);
      selector.Commit(picks);
      int k = 0;
      for (VmInstance& vm : pg.instances) {
        if (vm.node == next) {
          vm.server = picks[k++];
          ++out.n_srv[vm.server][pg.attack][next];
        }
      }
      placed[next] = true;
    }
    const PlacementUnits units = ComputePlacementUnits(dc, pg, g);
    out.intra_rack_units += units.intra_rack;
    out.inter_rack_units += units.inter_rack;
    out.placed.push_back(std::move(pg));
  }
  return out;
}

std::vector<SspResult> SspAll(const Topology& topo, const DspResult& dsp,
                              const GraphLibrary& lib) {
  std::vector<SspResult> out;
  for (int d = 0; d < topo.NumDatacenters(); ++d) {
    std::vector<PhysicalGraph> graphs;
    for (const auto& [key, pg] : dsp.physical) {
      if (key.second == d) graphs.push_back(pg);
    }
    out.push_back(SspGreedy(topo.datacenters[d], graphs, lib));
  }
  return out;
}

double EvaluateCost(const Topology& topo, const TrafficMatrix& traffic,
                    const DspResult& dsp, const std::vector<SspResult>& ssps,
                    const CostParams& params) {
  double wide = 0.0;
  for (std::size_t e = 0; e < dsp.f.size(); ++e) {
    for (std::size_t a = 0; a < dsp.f[e].size(); ++a) {
      for (std::size_t d = 0; d < dsp.f[e][a].size(); ++d) {
        wide += dsp.f[e][a][d] * traffic.t[e][a] * topo.latency[e][d];
      }
    }
  }
  double inside = 0.0;
  for (const SspResult& ssp : ssps) {
    inside += ssp.intra_rack_units * params.intra_unit_cost +
              ssp.inter_rack_units * params.inter_unit_cost;
  }
  return params.alpha * wide + inside;
}

std::string ToString(const Violation& v) {
  std::ostringstream os;
  os << "constraint " << v.constraint << " [";
  for (std::size_t k = 0; k < v.indices.size(); ++k) {
    os << (k ? "," : "") << v.indices[k];
  }
  os << "] slack " << v.slack << ": " << v.message;
  return os.str();
}

std::vector<Violation> CheckFeasibility(const Topology& topo,
                                        const TrafficMatrix& traffic,
                                        const GraphLibrary& lib,
                                        const DspResult& dsp,
                                        const std::vector<SspResult>& ssps,
                                        const CostParams& params) {
  std::vector<Violation> out;
  const int n_pops = topo.NumPops();
  const int n_dcs = topo.NumDatacenters();
  const int n_attacks = static_cast<int>(lib.size());
  auto report = [&](int constraint, std::vector<int> indices, double slack,
                    std::string message) {
    out.push_back({constraint, std::move(indices), slack, std::move(message)});
  };

  if (static_cast<int>(dsp.f.size()) != n_pops ||
      static_cast<int>(dsp.n_dc.size()) != n_dcs) {
    report(15, {}, 0.0, "assignment dimensions do not match topology");
    return out;
  }

  // (2) every unit of suspicious traffic is either assigned or in t_left.
  double expected_left = 0.0;
  for (int e = 0; e < n_pops; ++e) {
    for (int a = 0; a < n_attacks; ++a) {
      double sum = 0.0;
      for (int d = 0; d < n_dcs; ++d) {
        const double frac = dsp.f[e][a][d];
        if (frac < -1e-12 || frac > 1.0 + 1e-9) {
          report(15, {e, a, d}, frac < 0 ? frac : 1.0 - frac, "f outside [0,1]");
        }
        sum += frac;
      }
      if (sum > 1.0 + 1e-9) {
        report(2, {e, a}, 1.0 - sum, "assigned fractions sum above 1");
      }
      expected_left += traffic.t[e][a] * std::max(0.0, 1.0 - sum);
    }
  }
  if (std::abs(expected_left - dsp.t_left) > Tolerance(traffic.Total())) {
    report(2, {}, dsp.t_left - expected_left, "t_left disagrees with unassigned volume");
  }

  // (3)-(4) datacenter link capacity.
  std::vector<std::vector<double>> volume(n_attacks, std::vector<double>(n_dcs, 0.0));
  for (int d = 0; d < n_dcs; ++d) {
    double load = 0.0;
    for (int a = 0; a < n_attacks; ++a) {
      volume[a][d] = dsp.AssignedVolume(traffic, a, d);
      load += volume[a][d];
    }
    const double cap = topo.datacenters[d].link_capacity_gbps;
    if (load > cap + Tolerance(cap)) {
      report(4, {d}, cap - load, "datacenter link capacity exceeded");
    }
  }

  // (5) enough VMs per (d, a, i).
  for (int d = 0; d < n_dcs; ++d) {
    if (static_cast<int>(dsp.n_dc[d].size()) != n_attacks) {
      report(15, {d}, 0.0, "vm count table has wrong attack dimension");
      continue;
    }
    for (int a = 0; a < n_attacks; ++a) {
      const AnnotatedGraph& g = lib[a];
      for (int i = 0; i < g.NumNodes(); ++i) {
        const int n = dsp.n_dc[d][a][i];
        if (n < 0) report(15, {d, a, i}, n, "negative vm count");
        const double need = volume[a][d] * g.IncomingShare(i);
        const double have = n * g.node(i).capacity_gbps;
        if (have < need - Tolerance(need)) {
          report(5, {d, a, i}, have - need, "too few VMs for node " + g.node(i).name);
        }
      }
    }
  }

  // (6), (11)-(12) server slots and placement totals.
  std::vector<const SspResult*> by_dc(n_dcs, nullptr);
  for (const SspResult& ssp : ssps) {
    if (ssp.dc >= 0 && ssp.dc < n_dcs) by_dc[ssp.dc] = &ssp;
  }
  for (int d = 0; d < n_dcs; ++d) {
    const Datacenter& dc = topo.datacenters[d];
    const SspResult* ssp = by_dc[d];
    std::vector<std::vector<int>> placed_total(n_attacks);
    for (int a = 0; a < n_attacks; ++a) placed_total[a].assign(lib[a].NumNodes(), 0);
    if (ssp != nullptr) {
      if (static_cast<int>(ssp->n_srv.size()) != dc.ServerCount()) {
        report(6, {d}, 0.0, "server table size mismatch");
      } else {
        for (int s = 0; s < dc.ServerCount(); ++s) {
          int used = 0;
          for (int a = 0; a < n_attacks && a < static_cast<int>(ssp->n_srv[s].size()); ++a) {
            for (int i = 0; i < static_cast<int>(ssp->n_srv[s][a].size()) &&
                            i < lib[a].NumNodes();
                 ++i) {
              used += ssp->n_srv[s][a][i];
              placed_total[a][i] += ssp->n_srv[s][a][i];
            }
          }
          const int slots = dc.ServerById(s).vm_slots;
          if (used > slots) report(6, {d, s}, slots - used, "server slots exceeded");
        }
      }
    }
    for (int a = 0; a < n_attacks; ++a) {
      for (int i = 0; i < lib[a].NumNodes(); ++i) {
        const int want = dsp.n_dc[d][a][i];
        if (placed_total[a][i] != want) {
          report(12, {d, a, i}, placed_total[a][i] - want,
                 "placed VMs differ from datacenter VM count");
        }
      }
    }
  }

  // (13) every edge carrying traffic has VMs on both ends.
  for (int d = 0; d < n_dcs; ++d) {
    for (int a = 0; a < n_attacks; ++a) {
      if (volume[a][d] <= 0.0) continue;
      const AnnotatedGraph& g = lib[a];
      for (const GraphEdge& edge : g.edges()) {
        if (edge.weight <= 0.0) continue;
        if (dsp.n_dc[d][a][edge.from] <= 0 || dsp.n_dc[d][a][edge.to] <= 0) {
          report(13, {d, a, edge.from, edge.to}, -volume[a][d] * edge.weight,
                 "edge traffic has no VM endpoint");
        }
      }
    }
  }

  // (14) backbone links stay under beta of capacity.
  std::vector<double> link_load(topo.links.size(), 0.0);
  for (int e = 0; e < n_pops; ++e) {
    for (int d = 0; d < n_dcs; ++d) {
      double v = 0.0;
      for (int a = 0; a < n_attacks; ++a) v += dsp.f[e][a][d] * traffic.t[e][a];
      if (v <= 0.0) continue;
      auto it = topo.paths.find({e, d});
      if (it == topo.paths.end()) continue;
      for (int l : it->second) link_load[l] += v;
    }
  }
  for (int l = 0; l < static_cast<int>(topo.links.size()); ++l) {
    const double cap = params.beta * topo.links[l].capacity_gbps;
    if (link_load[l] > cap + Tolerance(cap)) {
      report(14, {l}, cap - link_load[l], "backbone link load above beta * capacity");
    }
  }
  return out;
}

}  // namespace bohatei
