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

#include "bohatei/oracle.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <unordered_map>

#include "bohatei/errors.h"

namespace bohatei {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr int kKeyBits = 21;
constexpr std::uint64_t kKeyMask = (1ULL << kKeyBits) - 1;

// Mixed-radix index over per-node VM count vectors.
class CountSpace {
 public:
  explicit CountSpace(std::vector<int> maxima) : maxima_(std::move(maxima)) {
    stride_.resize(maxima_.size());
    long s = 1;
    for (std::size_t k = 0; k < maxima_.size(); ++k) {
      stride_[k] = s;
      s *= maxima_[k] + 1;
    }
    size_ = s;
  }

  long size() const { return size_; }
  int dims() const { return static_cast<int>(maxima_.size()); }

  std::vector<int> Decode(long index) const {
    std::vector<int> v(maxima_.size());
    for (std::size_t k = 0; k < maxima_.size(); ++k) {
      v[k] = static_cast<int>(index / stride_[k] % (maxima_[k] + 1));
    }
    return v;
  }

  // Calls fn(sub_index) for every vector y <= v (componentwise).
  template <typename Fn>
  void ForEachBelow(const std::vector<int>& v, Fn&& fn) const {
    std::vector<int> y(v.size(), 0);
    long index = 0;
    while (true) {
      fn(index);
      std::size_t k = 0;
      for (; k < y.size(); ++k) {
        if (y[k] < v[k]) {
          ++y[k];
          index += stride_[k];
          break;
        }
        index -= y[k] * stride_[k];
        y[k] = 0;
      }
      if (k == y.size()) return;
    }
  }

 private:
  std::vector<int> maxima_;
  std::vector<long> stride_;
  long size_ = 1;
};

struct WeightedPair {
  int from;
  int to;
  double weight;  // edge traffic divided by (n_from * n_to)
};

}  // namespace

double MinPlacementCost(const Datacenter& dc, const GraphLibrary& lib,
                        const std::vector<double>& volume,
                        const std::vector<std::vector<int>>& counts,
                        const CostParams& params,
                        std::vector<std::vector<std::vector<int>>>* placement,
                        long max_states) {
  // Active (attack, node) pairs become the dimensions of the count space.
  std::vector<std::pair<int, int>> dims;
  std::vector<int> maxima;
  std::vector<std::vector<int>> dim_of(counts.size());
  int total_vms = 0;
  for (std::size_t a = 0; a < counts.size(); ++a) {
    dim_of[a].assign(counts[a].size(), -1);
    for (std::size_t i = 0; i < counts[a].size(); ++i) {
      if (counts[a][i] > 0) {
        dim_of[a][i] = static_cast<int>(dims.size());
        dims.push_back({static_cast<int>(a), static_cast<int>(i)});
        maxima.push_back(counts[a][i]);
        total_vms += counts[a][i];
      }
    }
  }
  if (placement != nullptr) {
    placement->assign(dc.ServerCount(), {});
    for (auto& per_server : *placement) {
      per_server.resize(lib.size());
      for (std::size_t a = 0; a < lib.size(); ++a) {
        per_server[a].assign(lib[a].NumNodes(), 0);
      }
    }
  }
  if (total_vms > dc.ComputeCapacity()) return std::numeric_limits<double>::infinity();

  double all_inter = 0.0;
  std::vector<WeightedPair> pairs;
  for (std::size_t a = 0; a < counts.size(); ++a) {
    for (const GraphEdge& edge : lib[a].edges()) {
      const int u = dim_of[a][edge.from];
      const int v = dim_of[a][edge.to];
      const double w = volume[a] * edge.weight;
      if (u < 0 || v < 0 || w <= 0.0) continue;
      all_inter += w * params.inter_unit_cost;
      pairs.push_back({u, v, w / (static_cast<double>(maxima[u]) * maxima[v])});
    }
  }
  if (pairs.empty() && placement == nullptr) return 0.0;

  const CountSpace space(maxima);
  if (space.size() > max_states) {
    throw OracleRefusal("placement search space " + std::to_string(space.size()) +
                        " exceeds bound " + std::to_string(max_states));
  }
  const long n_states = space.size();
  std::vector<std::vector<int>> decoded(n_states);
  std::vector<int> size_of(n_states);
  std::vector<double> colocated(n_states);  // sum over pairs of w * y_u * y_v
  for (long s = 0; s < n_states; ++s) {
    decoded[s] = space.Decode(s);
    size_of[s] = std::accumulate(decoded[s].begin(), decoded[s].end(), 0);
    double c = 0.0;
    for (const WeightedPair& p : pairs) c += p.weight * decoded[s][p.from] * decoded[s][p.to];
    colocated[s] = c;
  }

  // Gain to maximize: (inter - intra) * rack co-location + intra * server
  // co-location; cost = all_inter - gain.
  const double rack_gain = params.inter_unit_cost - params.intra_unit_cost;
  const double server_gain = params.intra_unit_cost;

  struct Step {
    std::vector<int> choice;  // sub-vector index chosen for each state
  };
  std::vector<std::vector<Step>> server_steps(dc.racks.size());
  std::vector<Step> rack_steps(dc.racks.size());

  std::vector<double> outer(n_states, kNegInf);
  outer[0] = 0.0;
  for (std::size_t r = 0; r < dc.racks.size(); ++r) {
    // Best within-rack value for every vector X placed entirely in rack r.
    std::vector<double> inner(n_states, kNegInf);
    inner[0] = 0.0;
    for (const Server& server : dc.racks[r].servers) {
      std::vector<double> next(n_states, kNegInf);
      Step step;
      step.choice.assign(n_states, -1);
      for (long y_all = 0; y_all < n_states; ++y_all) {
        space.ForEachBelow(decoded[y_all], [&](long y) {
          if (size_of[y] > server.vm_slots) return;
          const double prev = inner[y_all - y];
          if (prev == kNegInf) return;
          const double value = prev + server_gain * colocated[y];
          if (value > next[y_all]) {
            next[y_all] = value;
            step.choice[y_all] = static_cast<int>(y);
          }
        });
      }
      inner.swap(next);
      server_steps[r].push_back(std::move(step));
    }
    std::vector<double> next(n_states, kNegInf);
    Step step;
    step.choice.assign(n_states, -1);
    for (long z = 0; z < n_states; ++z) {
      space.ForEachBelow(decoded[z], [&](long x) {
        if (inner[x] == kNegInf || outer[z - x] == kNegInf) return;
        const double value = outer[z - x] + inner[x] + rack_gain * colocated[x];
        if (value > next[z]) {
          next[z] = value;
          step.choice[z] = static_cast<int>(x);
        }
      });
    }
    outer.swap(next);
    rack_steps[r] = std::move(step);
  }

  const long full = n_states - 1;
  if (outer[full] == kNegInf) return std::numeric_limits<double>::infinity();

  if (placement != nullptr) {
    long z = full;
    for (int r = static_cast<int>(dc.racks.size()) - 1; r >= 0; --r) {
      const long x = rack_steps[r].choice[z];
      long y_all = x;
      for (int j = static_cast<int>(dc.racks[r].servers.size()) - 1; j >= 0; --j) {
        const long y = server_steps[r][j].choice[y_all];
        const int server_id = dc.racks[r].servers[j].id;
        for (int k = 0; k < space.dims(); ++k) {
          (*placement)[server_id][dims[k].first][dims[k].second] += decoded[y][k];
        }
        y_all -= y;
      }
      z -= x;
    }
  }
  return std::max(0.0, all_inter - outer[full]);
}

namespace {

struct TableEntry {
  std::uint64_t key;     // per-datacenter volume units, kKeyBits each
  long handled_units;
  double wide_cost;
};

struct DpNode {
  double cost;
  std::uint64_t prev;
  int split;
};

int KeyUnits(std::uint64_t key, int d) {
  return static_cast<int>((key >> (kKeyBits * d)) & kKeyMask);
}

long Gcd(long x, long y) { return y == 0 ? x : Gcd(y, x % y); }

}  // namespace

OracleResult OracleExact(const OracleInstance& inst, const Topology& topo,
                         const TrafficMatrix& traffic, const GraphLibrary& lib,
                         const CostParams& params) {
  const OracleLimits& lim = inst.limits;
  const int n_pops = topo.NumPops();
  const int n_dcs = topo.NumDatacenters();
  const int n_attacks = static_cast<int>(lib.size());
  traffic.Validate(n_pops, n_attacks);
  params.Validate();

  auto refuse = [&](const std::string& why) {
    throw OracleRefusal("oracle refuses instance: " + why + " (pops " +
                        std::to_string(n_pops) + "/" + std::to_string(lim.max_pops) +
                        ", dcs " + std::to_string(n_dcs) + "/" +
                        std::to_string(lim.max_dcs) + ", attacks " +
                        std::to_string(n_attacks) + "/" +
                        std::to_string(lim.max_attacks) + ")");
  };
  if (n_pops > lim.max_pops || n_dcs > lim.max_dcs || n_attacks > lim.max_attacks) {
    refuse("too many pops, datacenters or attacks");
  }
  if (n_dcs == 0) refuse("no datacenters");
  for (const AnnotatedGraph& g : lib) {
    if (g.NumNodes() > lim.max_nodes) refuse("graph '" + g.attack().name + "' too large");
  }
  for (const Datacenter& dc : topo.datacenters) {
    if (dc.ServerCount() > lim.max_servers_per_dc) refuse("datacenter has too many servers");
  }
  const long steps = std::lround(1.0 / inst.delta);
  if (!(inst.delta > 0.0) || std::abs(steps * inst.delta - 1.0) > 1e-9) {
    throw InputError("1/delta must be a positive integer");
  }
  const double total = traffic.Total();
  for (const auto& [pair, path] : topo.paths) {
    for (int l : path) {
      if (params.beta * topo.links[l].capacity_gbps < total) {
        refuse("backbone link " + std::to_string(l) + " could bind");
      }
    }
  }

  // Common volume unit: every cell's delta step is an integer number of units.
  constexpr double kScale = 1e6;
  long g = 0;
  std::vector<std::vector<long>> cell_units(n_pops, std::vector<long>(n_attacks, 0));
  for (int e = 0; e < n_pops; ++e) {
    for (int a = 0; a < n_attacks; ++a) {
      const double scaled = traffic.t[e][a] * kScale;
      const long rounded = std::lround(scaled);
      if (std::abs(scaled - rounded) > 1e-3) refuse("volumes finer than 1e-6 Gbps");
      cell_units[e][a] = rounded;
      if (rounded > 0) g = Gcd(g, rounded);
    }
  }
  const double unit_gbps = g > 0 ? static_cast<double>(g) / (kScale * steps) : 1.0;
  for (auto& row : cell_units) {
    for (long& u : row) u = g > 0 ? u / g : 0;
  }

  // All ways to split one cell across datacenters in delta steps.
  std::vector<std::array<int, 3>> splits;
  {
    std::array<int, 3> k{0, 0, 0};
    std::function<void(int, int)> rec = [&](int d, int left) {
      if (d == n_dcs) {
        splits.push_back(k);
        return;
      }
      for (int x = 0; x <= left; ++x) {
        k[d] = x;
        rec(d + 1, left - x);
      }
      k[d] = 0;
    };
    rec(0, static_cast<int>(steps));
  }

  std::vector<std::vector<double>> factor(n_attacks);
  for (int a = 0; a < n_attacks; ++a) {
    for (int i = 0; i < lib[a].NumNodes(); ++i) factor[a].push_back(lib[a].NodeVmFactor(i));
  }
  auto vm_counts = [&](int a, double volume) {
    std::vector<int> counts;
    for (double c : factor[a]) counts.push_back(CeilVms(volume * c));
    return counts;
  };

  // Per attack: best wide-area cost for every reachable per-dc volume vector.
  std::vector<std::vector<TableEntry>> tables(2);
  std::vector<std::vector<std::unordered_map<std::uint64_t, DpNode>>> layers(n_attacks);
  std::vector<std::vector<int>> ingresses(n_attacks);
  for (int a = 0; a < n_attacks; ++a) {
    for (int e = 0; e < n_pops; ++e) {
      if (cell_units[e][a] > 0) ingresses[a].push_back(e);
    }
    std::unordered_map<std::uint64_t, DpNode> current{{0, {0.0, 0, -1}}};
    for (int e : ingresses[a]) {
      std::unordered_map<std::uint64_t, DpNode> next;
      for (const auto& [key, node] : current) {
        for (int s = 0; s < static_cast<int>(splits.size()); ++s) {
          std::uint64_t new_key = 0;
          double cost = node.cost;
          bool ok = true;
          for (int d = 0; d < n_dcs && ok; ++d) {
            const long units = KeyUnits(key, d) + splits[s][d] * cell_units[e][a];
            if (units > static_cast<long>(kKeyMask)) refuse("volume grid too fine");
            const double volume = units * unit_gbps;
            if (volume > topo.datacenters[d].link_capacity_gbps + 1e-9) {
              ok = false;
              break;
            }
            if (splits[s][d] > 0) {
              const std::vector<int> counts = vm_counts(a, volume);
              if (std::accumulate(counts.begin(), counts.end(), 0) >
                  topo.datacenters[d].ComputeCapacity()) {
                ok = false;
                break;
              }
            }
            new_key |= static_cast<std::uint64_t>(units) << (kKeyBits * d);
            cost += splits[s][d] * inst.delta * traffic.t[e][a] * topo.latency[e][d];
          }
          if (!ok) continue;
          auto it = next.find(new_key);
          if (it == next.end() || cost < it->second.cost - 1e-12) {
            next[new_key] = {cost, key, s};
          }
        }
      }
      layers[a].push_back(current);
      current.swap(next);
    }
    layers[a].push_back(current);
    for (const auto& [key, node] : current) {
      long handled = 0;
      for (int d = 0; d < n_dcs; ++d) handled += KeyUnits(key, d);
      tables[a].push_back({key, handled, node.cost});
    }
    std::sort(tables[a].begin(), tables[a].end(), [](const TableEntry& x, const TableEntry& y) {
      if (x.handled_units != y.handled_units) return x.handled_units > y.handled_units;
      if (x.wide_cost != y.wide_cost) return x.wide_cost < y.wide_cost;
      return x.key < y.key;
    });
  }
  if (n_attacks < 2) tables[1] = {{0, 0, 0.0}};
  if (n_attacks < 1) tables[0] = {{0, 0, 0.0}};
  if (static_cast<double>(tables[0].size()) * tables[1].size() > lim.max_pairs) {
    refuse("search space of " + std::to_string(tables[0].size()) + " x " +
           std::to_string(tables[1].size()) + " volume vectors");
  }

  std::unordered_map<std::uint64_t, double> dc_cost_memo;
  auto dc_cost = [&](int d, int units0, int units1) {
    const std::uint64_t key = (static_cast<std::uint64_t>(d) << (2 * kKeyBits)) |
                              (static_cast<std::uint64_t>(units0) << kKeyBits) |
                              static_cast<std::uint64_t>(units1);
    auto it = dc_cost_memo.find(key);
    if (it != dc_cost_memo.end()) return it->second;
    std::vector<double> volume{units0 * unit_gbps, units1 * unit_gbps};
    std::vector<std::vector<int>> counts;
    volume.resize(n_attacks);
    for (int a = 0; a < n_attacks; ++a) counts.push_back(vm_counts(a, volume[a]));
    const double cost = MinPlacementCost(topo.datacenters[d], lib, volume, counts, params,
                                         nullptr, lim.max_placement_states);
    dc_cost_memo.emplace(key, cost);
    return cost;
  };

  bool found = false;
  long best_handled = -1;
  double best_objective = 0.0, best_wide = 0.0, best_dc = 0.0;
  std::size_t best_i = 0, best_j = 0;
  long evaluated = 0;
  const long max_b = tables[1].front().handled_units;
  for (std::size_t i = 0; i < tables[0].size(); ++i) {
    const TableEntry& x = tables[0][i];
    if (found && x.handled_units + max_b < best_handled) break;
    for (std::size_t j = 0; j < tables[1].size(); ++j) {
      const TableEntry& y = tables[1][j];
      const long handled = x.handled_units + y.handled_units;
      if (found && handled < best_handled) break;
      const double wide = x.wide_cost + y.wide_cost;
      if (found && handled == best_handled &&
          params.alpha * wide >= best_objective - 1e-9 * std::max(1.0, best_objective)) {
        break;
      }
      ++evaluated;
      bool ok = true;
      double inside = 0.0;
      for (int d = 0; d < n_dcs && ok; ++d) {
        const int u0 = KeyUnits(x.key, d);
        const int u1 = KeyUnits(y.key, d);
        const Datacenter& dc = topo.datacenters[d];
        if ((u0 + u1) * unit_gbps > dc.link_capacity_gbps + 1e-9) {
          ok = false;
          break;
        }
        int vms = 0;
        if (n_attacks > 0) {
          for (int c : vm_counts(0, u0 * unit_gbps)) vms += c;
        }
        if (n_attacks > 1) {
          for (int c : vm_counts(1, u1 * unit_gbps)) vms += c;
        }
        if (vms > dc.ComputeCapacity()) {
          ok = false;
          break;
        }
        const double c = dc_cost(d, u0, u1);
        if (!std::isfinite(c)) ok = false;
        inside += c;
      }
      if (!ok) continue;
      const double objective = params.alpha * wide + inside;
      if (!found || handled > best_handled ||
          objective < best_objective - 1e-9 * std::max(1.0, best_objective)) {
        found = true;
        best_handled = handled;
        best_objective = objective;
        best_wide = wide;
        best_dc = inside;
        best_i = i;
        best_j = j;
      }
    }
  }

  OracleResult out;
  out.candidates_evaluated = evaluated;
  out.f.assign(n_pops, std::vector<std::vector<double>>(n_attacks,
                                                         std::vector<double>(n_dcs, 0.0)));
  if (!found) {
    // The all-zero assignment is always feasible; only reachable without traffic.
    out.n_dc.assign(n_dcs, {});
    for (int d = 0; d < n_dcs; ++d) {
      for (int a = 0; a < n_attacks; ++a) out.n_dc[d].emplace_back(lib[a].NumNodes(), 0);
    }
    return out;
  }
  out.handled = best_handled * unit_gbps;
  out.objective = best_objective;
  out.wide_area_cost = best_wide;
  out.dc_cost = best_dc;

  const std::uint64_t chosen[2] = {tables[0][best_i].key, tables[1][best_j].key};
  for (int a = 0; a < n_attacks; ++a) {
    std::uint64_t key = chosen[a];
    for (int layer = static_cast<int>(ingresses[a].size()); layer > 0; --layer) {
      const DpNode& node = layers[a][layer].at(key);
      const int e = ingresses[a][layer - 1];
      for (int d = 0; d < n_dcs; ++d) {
        out.f[e][a][d] = splits[node.split][d] * inst.delta;
      }
      key = node.prev;
    }
  }
  out.n_dc.resize(n_dcs);
  out.n_srv.resize(n_dcs);
  for (int d = 0; d < n_dcs; ++d) {
    std::vector<double> volume(n_attacks);
    for (int a = 0; a < n_attacks; ++a) {
      volume[a] = KeyUnits(chosen[a], d) * unit_gbps;
      out.n_dc[d].push_back(vm_counts(a, volume[a]));
    }
    MinPlacementCost(topo.datacenters[d], lib, volume, out.n_dc[d], params, &out.n_srv[d],
                     lim.max_placement_states);
  }
  return out;
}

}  // namespace bohatei
