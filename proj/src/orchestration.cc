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

#include "bohatei/orchestration.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bohatei/errors.h"

namespace bohatei {
namespace {

std::string GatewayName(int dc) { return "dc" + std::to_string(dc) + "/gw"; }

std::string TorName(int dc, int rack) {
  return "dc" + std::to_string(dc) + "/tor" + std::to_string(rack);
}

std::string TunnelName(int e, int d, int a) {
  return "tunnel/e" + std::to_string(e) + "-dc" + std::to_string(d) + "/a" + std::to_string(a);
}

RuleMatch TagMatch(Tag tag) { return {RuleMatch::Kind::kTag, std::to_string(tag)}; }

RuleAction Forward(RuleAction::Kind kind, const std::string& target) {
  return {kind, {{target, 1.0}}};
}

const PhysicalGraph* FindPlaced(const std::vector<SspResult>& ssps, int attack, int dc) {
  for (const SspResult& r : ssps) {
    if (r.dc != dc) continue;
    for (const PhysicalGraph& pg : r.placed) {
      if (pg.attack == attack) return &pg;
    }
  }
  return nullptr;
}

const VmInstance& InstanceById(const PhysicalGraph& pg, int vm_id) {
  for (const VmInstance& vm : pg.instances) {
    if (vm.vm_id == vm_id) return vm;
  }
  throw InputError("physical graph has no VM " + std::to_string(vm_id));
}

const char* MatchKindName(RuleMatch::Kind kind) {
  switch (kind) {
    case RuleMatch::Kind::kTag: return "tag";
    case RuleMatch::Kind::kFlowSpec: return "flowspec";
    case RuleMatch::Kind::kTunnel: return "tunnel";
  }
  return "?";
}

const char* ActionKindName(RuleAction::Kind kind) {
  switch (kind) {
    case RuleAction::Kind::kVm: return "vm";
    case RuleAction::Kind::kSwitch: return "switch";
    case RuleAction::Kind::kTunnel: return "tunnel";
    case RuleAction::Kind::kCustomer: return "customer";
  }
  return "?";
}

bool SameAction(const RuleAction& x, const RuleAction& y) {
  if (x.kind != y.kind || x.targets.size() != y.targets.size()) return false;
  for (std::size_t k = 0; k < x.targets.size(); ++k) {
    if (x.targets[k].first != y.targets[k].first ||
        std::abs(x.targets[k].second - y.targets[k].second) > 1e-12) {
      return false;
    }
  }
  return true;
}

}  // namespace

std::string VmName(int dc, int attack, int vm_id) {
  return "vm/dc" + std::to_string(dc) + "/a" + std::to_string(attack) + "/" +
         std::to_string(vm_id);
}

const std::vector<Tag>& TagPool::Pool(int vm_id, int context) const {
  auto it = pools.find({vm_id, context});
  if (it == pools.end() || it->second.empty()) {
    throw CapacityError("empty tag pool for vm " + std::to_string(vm_id) + " context " +
                        std::to_string(context));
  }
  return it->second;
}

Tag TagPool::MaxTag() const { return targets.empty() ? 0 : targets.rbegin()->first; }

TagPool AssignTags(const PhysicalGraph& pg, const AnnotatedGraph& g, std::uint64_t seed,
                   Tag first_tag, int max_bits) {
  pg.Validate(g);
  if (!pg.Placed()) {
    throw InputError("physical graph of attack " + std::to_string(pg.attack) + " in dc " +
                     std::to_string(pg.dc) + " is not placed");
  }
  TagPool out;
  out.attack = pg.attack;
  out.dc = pg.dc;
  Rng rng(seed, 0x7A65000000ULL + static_cast<std::uint64_t>(pg.attack) * 4099 + pg.dc);
  Tag next = first_tag;
  const long limit = 1L << std::min(max_bits, 40);
  auto alloc = [&](TagTarget target) {
    if (next >= limit) {
      throw CapacityError("tag space exhausted: tag " + std::to_string(next) +
                          " needs more than " + std::to_string(max_bits) + " bits");
    }
    out.targets[next] = target;
    return next++;
  };

  // Context tags first so a graph's first branching node gets 1, 2, ...
  for (int i = 0; i < g.NumNodes(); ++i) {
    const std::vector<const VmInstance*> vms = pg.InstancesOf(i);
    if (vms.empty()) continue;
    for (int ctx = 0; ctx < g.node(i).contexts; ++ctx) {
      const GraphEdge* edge = nullptr;
      for (int k : g.OutEdges(i)) {
        if (g.edges()[k].context == ctx) edge = &g.edges()[k];
      }
      std::vector<Tag> tags;
      if (edge == nullptr) {
        tags.push_back(alloc({TagTarget::Kind::kCustomer, -1}));
      } else {
        std::vector<const VmInstance*> downstream = pg.InstancesOf(edge->to);
        rng.Shuffle(downstream);
        for (const VmInstance* d : downstream) {
          tags.push_back(alloc({TagTarget::Kind::kVm, d->vm_id}));
        }
      }
      for (const VmInstance* vm : vms) out.pools[{vm->vm_id, ctx}] = tags;
    }
  }
  for (int i = 0; i < g.NumNodes(); ++i) {
    if (!g.IsRoot(i)) continue;
    const std::vector<const VmInstance*> vms = pg.InstancesOf(i);
    for (const VmInstance* vm : vms) {
      out.entry_tags.push_back(alloc({TagTarget::Kind::kVm, vm->vm_id}));
      out.entry_weights.push_back(g.RootFraction(i) / static_cast<double>(vms.size()));
    }
  }
  for (int i = 0; i < g.NumNodes(); ++i) {
    if (!g.node(i).bidirectional) continue;
    for (const VmInstance* vm : pg.InstancesOf(i)) {
      out.return_tags[vm->vm_id] = alloc({TagTarget::Kind::kReturn, vm->vm_id});
    }
  }
  return out;
}

std::vector<TagPool> AssignAllTags(const std::vector<SspResult>& ssps,
                                   const GraphLibrary& lib, std::uint64_t seed,
                                   int max_bits) {
  std::vector<TagPool> out;
  for (const SspResult& r : ssps) {
    Tag next = 1;
    std::vector<const PhysicalGraph*> graphs;
    for (const PhysicalGraph& pg : r.placed) graphs.push_back(&pg);
    std::sort(graphs.begin(), graphs.end(),
              [](const PhysicalGraph* x, const PhysicalGraph* y) { return x->attack < y->attack; });
    for (const PhysicalGraph* pg : graphs) {
      if (pg->TotalVms() == 0) continue;
      out.push_back(AssignTags(*pg, lib.at(pg->attack), seed, next, max_bits));
      next = std::max(next, out.back().MaxTag() + 1);
    }
  }
  return out;
}

int TagBits(long max_tags) {
  int bits = 0;
  while ((1L << bits) < max_tags) ++bits;
  return bits;
}

TagSpaceBound ComputeTagSpaceBound(const GraphLibrary& lib, int l_max, int k_max) {
  if (l_max < 1 || k_max < 1) throw InputError("l_max and k_max must be >= 1");
  long nodes = 0;
  for (const AnnotatedGraph& g : lib) nodes += g.NumNodes();
  TagSpaceBound out;
  out.max_tags = static_cast<long>(k_max) * l_max * nodes;
  out.bits = TagBits(out.max_tags);
  return out;
}

TagSpaceBound ComputeTagSpaceBound(const GraphLibrary& lib, int l_max) {
  int k_max = 1;
  for (const AnnotatedGraph& g : lib) k_max = std::max(k_max, g.MaxContexts());
  return ComputeTagSpaceBound(lib, l_max, k_max);
}

long ForwardingPlan::RuleCount() const {
  long n = 0;
  for (const auto& [sw, rules] : dc_tables) n += static_cast<long>(rules.size());
  return n;
}

long ForwardingPlan::MaxRulesPerSwitch() const {
  long n = 0;
  for (const auto& [sw, rules] : dc_tables) n = std::max(n, static_cast<long>(rules.size()));
  return n;
}

void AddRule(ForwardingPlan& plan, const std::string& switch_id, const RuleMatch& match,
             const RuleAction& action) {
  auto& table = plan.dc_tables[switch_id];
  auto [it, inserted] = table.emplace(match, action);
  if (!inserted && !SameAction(it->second, action)) {
    throw ConflictError("switch " + switch_id + " already has a different rule for " +
                        MatchKindName(match.kind) + " " + match.value);
  }
}

ForwardingPlan SynthesizeRules(const Topology& topo, const DspResult& dsp,
                               const std::vector<SspResult>& ssps,
                               const std::vector<TagPool>& pools, const GraphLibrary& lib) {
  ForwardingPlan plan;
  plan.pools = pools;
  for (std::size_t e = 0; e < dsp.f.size(); ++e) {
    for (std::size_t a = 0; a < dsp.f[e].size(); ++a) {
      RuleAction split{RuleAction::Kind::kTunnel, {}};
      std::vector<WideAreaSplit> splits;
      for (std::size_t d = 0; d < dsp.f[e][a].size(); ++d) {
        const double w = dsp.f[e][a][d];
        if (w <= 0.0) continue;
        splits.push_back({static_cast<int>(d), w});
        split.targets.push_back({TunnelName(e, d, a), w});
      }
      if (splits.empty()) continue;
      plan.wide_area[{static_cast<int>(e), static_cast<int>(a)}] = splits;
      AddRule(plan, "edge/" + std::to_string(e),
              {RuleMatch::Kind::kFlowSpec, "attack=" + std::to_string(a)}, split);
    }
  }

  Tag max_tag = 0;
  for (const TagPool& pool : pools) {
    const PhysicalGraph* pg = FindPlaced(ssps, pool.attack, pool.dc);
    if (pg == nullptr) {
      throw InputError("tag pool for attack " + std::to_string(pool.attack) +
                       " has no placed graph in dc " + std::to_string(pool.dc));
    }
    if (!pg->Placed()) throw InputError("unplaced VM in dc " + std::to_string(pool.dc));
    lib.at(pool.attack);
    const Datacenter& dc = topo.datacenters.at(pool.dc);
    const std::string gw = GatewayName(pool.dc);

    auto deliver = [&](Tag tag, int vm_id) {
      const VmInstance& vm = InstanceById(*pg, vm_id);
      const std::string tor = TorName(pool.dc, dc.RackOfServer(vm.server));
      AddRule(plan, gw, TagMatch(tag), Forward(RuleAction::Kind::kSwitch, tor));
      AddRule(plan, tor, TagMatch(tag),
              Forward(RuleAction::Kind::kVm, VmName(pool.dc, pool.attack, vm_id)));
      return tor;
    };

    std::map<Tag, std::string> entry_tor;
    for (const auto& [tag, target] : pool.targets) {
      max_tag = std::max(max_tag, tag);
      switch (target.kind) {
        case TagTarget::Kind::kCustomer:
          AddRule(plan, gw, TagMatch(tag), Forward(RuleAction::Kind::kCustomer, "customer"));
          break;
        case TagTarget::Kind::kVm:
          entry_tor[tag] = deliver(tag, target.vm_id);
          break;
        case TagTarget::Kind::kReturn:
          deliver(tag, target.vm_id);
          PinBidirectional(plan, tag, pool.dc, target.vm_id);
          break;
      }
    }

    RuleAction entry{RuleAction::Kind::kSwitch, {}};
    for (std::size_t k = 0; k < pool.entry_tags.size(); ++k) {
      const Tag tag = pool.entry_tags[k];
      entry.targets.push_back(
          {entry_tor.at(tag) + "+tag" + std::to_string(tag), pool.entry_weights[k]});
    }
    for (std::size_t e = 0; e < dsp.f.size(); ++e) {
      if (dsp.f[e][pool.attack][pool.dc] <= 0.0) continue;
      AddRule(plan, gw, {RuleMatch::Kind::kTunnel, TunnelName(e, pool.dc, pool.attack)},
              entry);
    }
  }
  plan.tag_bits = TagBits(static_cast<long>(max_tag) + 1);
  return plan;
}

RuleCountComparison CompareRuleCounts(const ForwardingPlan& plan, long n_flows) {
  if (n_flows < 0) throw InputError("n_flows must be >= 0");
  return {plan.MaxRulesPerSwitch(), n_flows};
}

Tag LoadBalancePick(const TagPool& pool, int vm_id, int context, Rng& rng) {
  const std::vector<Tag>& tags = pool.Pool(vm_id, context);
  return tags[rng.Below(tags.size())];
}

void PinBidirectional(ForwardingPlan& plan, Tag tag, int dc, int vm_id) {
  bool known = false;
  for (const TagPool& pool : plan.pools) {
    if (pool.dc == dc && pool.targets.count(tag) > 0) known = true;
  }
  if (!known) {
    throw InputError("tag " + std::to_string(tag) + " is not allocated in dc " +
                     std::to_string(dc));
  }
  const std::pair<int, int> value{dc, vm_id};
  auto [it, inserted] = plan.bidi_pins.emplace(std::make_pair(dc, tag), value);
  if (!inserted && it->second != value) {
    throw ConflictError("tag " + std::to_string(tag) + " in dc " + std::to_string(dc) +
                        " is already pinned to vm " + std::to_string(it->second.second));
  }
}

std::vector<std::string> VerifyPlan(const ForwardingPlan& plan, const DspResult& dsp,
                                    const std::vector<SspResult>& ssps,
                                    const GraphLibrary& lib) {
  std::vector<std::string> gaps;
  auto rule = [&](const std::string& sw, const RuleMatch& m) -> const RuleAction* {
    auto t = plan.dc_tables.find(sw);
    if (t == plan.dc_tables.end()) return nullptr;
    auto r = t->second.find(m);
    return r == t->second.end() ? nullptr : &r->second;
  };

  for (std::size_t e = 0; e < dsp.f.size(); ++e) {
    for (std::size_t a = 0; a < dsp.f[e].size(); ++a) {
      const RuleAction* edge =
          rule("edge/" + std::to_string(e), {RuleMatch::Kind::kFlowSpec, "attack=" + std::to_string(a)});
      for (std::size_t d = 0; d < dsp.f[e][a].size(); ++d) {
        if (dsp.f[e][a][d] <= 0.0) continue;
        const std::string tunnel = TunnelName(e, d, a);
        bool routed = false;
        if (edge != nullptr) {
          for (const auto& [target, w] : edge->targets) routed = routed || target == tunnel;
        }
        if (!routed) gaps.push_back("no edge rule sends (e" + std::to_string(e) + ", a" +
                                    std::to_string(a) + ") into " + tunnel);
        if (rule(GatewayName(d), {RuleMatch::Kind::kTunnel, tunnel}) == nullptr) {
          gaps.push_back("gateway of dc" + std::to_string(d) + " has no rule for " + tunnel);
        }
      }
    }
  }

  for (const SspResult& r : ssps) {
    for (const PhysicalGraph& pg : r.placed) {
      if (pg.TotalVms() == 0) continue;
      const AnnotatedGraph& g = lib.at(pg.attack);
      const TagPool* pool = nullptr;
      for (const TagPool& p : plan.pools) {
        if (p.attack == pg.attack && p.dc == pg.dc) pool = &p;
      }
      const std::string where = " (dc" + std::to_string(pg.dc) + ", a" +
                                std::to_string(pg.attack) + ")";
      if (pool == nullptr) {
        gaps.push_back("no tag pool" + where);
        continue;
      }
      // Tag t reaches vm: gateway sends it to the vm's rack, ToR delivers it.
      auto reaches = [&](Tag t, const VmInstance& vm) {
        const RuleAction* at_gw = rule(GatewayName(pg.dc), TagMatch(t));
        if (at_gw == nullptr || at_gw->targets.empty()) return false;
        const RuleAction* at_tor = rule(at_gw->targets[0].first, TagMatch(t));
        return at_tor != nullptr && at_tor->kind == RuleAction::Kind::kVm &&
               at_tor->targets[0].first == VmName(pg.dc, pg.attack, vm.vm_id);
      };
      for (const GraphEdge& edge : g.edges()) {
        if (edge.weight <= 0.0) continue;
        for (const VmInstance* up : pg.InstancesOf(edge.from)) {
          auto it = pool->pools.find({up->vm_id, edge.context});
          for (const VmInstance* down : pg.InstancesOf(edge.to)) {
            bool ok = false;
            if (it != pool->pools.end()) {
              for (Tag t : it->second) ok = ok || reaches(t, *down);
            }
            if (!ok) {
              gaps.push_back("edge " + std::to_string(edge.from) + "->" +
                             std::to_string(edge.to) + " vm " + std::to_string(up->vm_id) +
                             " cannot reach vm " + std::to_string(down->vm_id) + where);
            }
          }
        }
      }
      for (int i = 0; i < g.NumNodes(); ++i) {
        if (!g.IsRoot(i)) continue;
        for (const VmInstance* vm : pg.InstancesOf(i)) {
          bool ok = false;
          for (Tag t : pool->entry_tags) ok = ok || reaches(t, *vm);
          if (!ok) gaps.push_back("root vm " + std::to_string(vm->vm_id) + " unreachable" + where);
        }
      }
    }
  }
  return gaps;
}

std::string DumpPlan(const ForwardingPlan& plan) {
  std::ostringstream out;
  out << "tag_bits " << plan.tag_bits << "\n";
  for (const auto& [sw, rules] : plan.dc_tables) {
    for (const auto& [match, action] : rules) {
      out << sw << " | " << MatchKindName(match.kind) << "=" << match.value << " -> "
          << ActionKindName(action.kind);
      for (const auto& [target, w] : action.targets) out << " " << target << "@" << w;
      out << "\n";
    }
  }
  for (const auto& [key, value] : plan.bidi_pins) {
    out << "pin dc" << key.first << " tag=" << key.second << " -> dc" << value.first
        << " vm " << value.second << "\n";
  }
  return out.str();
}

}  // namespace bohatei
