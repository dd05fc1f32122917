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

#ifndef BOHATEI_ORCHESTRATION_H_
#define BOHATEI_ORCHESTRATION_H_

#include <cstdint>
#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "bohatei/defense_graph.h"
#include "bohatei/resource_manager.h"
#include "bohatei/rng.h"
#include "bohatei/topology.h"

namespace bohatei {

using Tag = int;

// What a tag steers to inside its datacenter.
struct TagTarget {
  enum class Kind { kVm, kCustomer, kReturn };
  Kind kind = Kind::kVm;
  int vm_id = -1;  // downstream VM (kVm) or pinned VM (kReturn)
};

// Tags of one physical graph. Tags are unique within a datacenter.
//
// pools[(vm, context)] lists one tag per VM of the successor reached through
// that context; a context with no successor gets a single egress tag. All VMs
// of a logical node share the same pools, so a tag identifies the downstream
// VM regardless of which upstream VM stamped it. Entry tags select a root VM
// for traffic arriving over a tunnel.
struct TagPool {
  int attack = 0;
  int dc = 0;
  std::map<std::pair<int, int>, std::vector<Tag>> pools;
  std::vector<Tag> entry_tags;          // aligned with entry_weights
  std::vector<double> entry_weights;    // share of graph input per entry tag
  std::map<int, Tag> return_tags;       // bidirectional VM -> its return tag
  std::map<Tag, TagTarget> targets;

  const std::vector<Tag>& Pool(int vm_id, int context) const;
  Tag MaxTag() const;
};

// Tags for one placed physical graph, numbered from first_tag upwards. The
// seed permutes the order of tags inside each pool. Throws CapacityError
// when a tag would need more than max_bits bits, InputError if unplaced.
TagPool AssignTags(const PhysicalGraph& pg, const AnnotatedGraph& g, std::uint64_t seed,
                   Tag first_tag = 1, int max_bits = 16);

// AssignTags for every placed graph; numbering restarts at 1 per datacenter.
std::vector<TagPool> AssignAllTags(const std::vector<SspResult>& ssps,
                                   const GraphLibrary& lib, std::uint64_t seed,
                                   int max_bits = 16);

struct TagSpaceBound {
  long max_tags = 0;
  int bits = 0;
};

// k_max * l_max * sum of |V_a|, with k_max the largest context count.
TagSpaceBound ComputeTagSpaceBound(const GraphLibrary& lib, int l_max);
TagSpaceBound ComputeTagSpaceBound(const GraphLibrary& lib, int l_max, int k_max);
int TagBits(long max_tags);

struct RuleMatch {
  enum class Kind { kTag, kFlowSpec, kTunnel };
  Kind kind = Kind::kTag;
  std::string value;

  bool operator<(const RuleMatch& o) const {
    return std::tie(kind, value) < std::tie(o.kind, o.value);
  }
};

struct RuleAction {
  enum class Kind { kVm, kSwitch, kTunnel, kCustomer };
  Kind kind = Kind::kSwitch;
  // (target, weight); several entries mean a weighted split.
  std::vector<std::pair<std::string, double>> targets;
};

struct ForwardingRule {
  RuleMatch match;
  RuleAction action;
};

struct WideAreaSplit {
  int dc = 0;
  double weight = 0.0;
};

struct ForwardingPlan {
  std::map<std::pair<int, int>, std::vector<WideAreaSplit>> wide_area;  // (e, a)
  // Switch id -> rules keyed by match. Switch ids: "edge/<e>", "dc<d>/gw",
  // "dc<d>/tor<r>".
  std::map<std::string, std::map<RuleMatch, RuleAction>> dc_tables;
  int tag_bits = 0;
  std::map<std::pair<int, Tag>, std::pair<int, int>> bidi_pins;  // (dc, tag) -> (dc, vm)
  std::vector<TagPool> pools;

  long RuleCount() const;
  long MaxRulesPerSwitch() const;
};

// Adds one rule; throws ConflictError if the switch already matches `match`
// with a different action.
void AddRule(ForwardingPlan& plan, const std::string& switch_id, const RuleMatch& match,
             const RuleAction& action);

// Proactive rules for a placed assignment: flow-spec to tunnel splits at the
// ingress edge, tunnel to entry tags and tag to rack at each gateway, tag to
// VM at each top-of-rack switch. Return tags of bidirectional VMs are pinned.
ForwardingPlan SynthesizeRules(const Topology& topo, const DspResult& dsp,
                               const std::vector<SspResult>& ssps,
                               const std::vector<TagPool>& pools, const GraphLibrary& lib);

struct RuleCountComparison {
  long tag_rules = 0;       // largest switch table in the plan
  long per_flow_rules = 0;  // one rule per flow
};

RuleCountComparison CompareRuleCounts(const ForwardingPlan& plan, long n_flows);

// Uniform choice from the pool of (vm, context). CapacityError when empty.
Tag LoadBalancePick(const TagPool& pool, int vm_id, int context, Rng& rng);

// Steers reverse traffic carrying `tag` at datacenter dc to vm. Idempotent;
// ConflictError if the tag is already pinned elsewhere, InputError if the
// tag is unknown.
void PinBidirectional(ForwardingPlan& plan, Tag tag, int dc, int vm_id);

// Structural gaps in a plan (missing tunnel, tag or delivery rules); empty
// when every positive-weight physical edge is realized by a rule chain.
std::vector<std::string> VerifyPlan(const ForwardingPlan& plan, const DspResult& dsp,
                                    const std::vector<SspResult>& ssps,
                                    const GraphLibrary& lib);

// One line per rule, switches and matches in sorted order.
std::string DumpPlan(const ForwardingPlan& plan);

std::string VmName(int dc, int attack, int vm_id);

}  // namespace bohatei

#endif  // BOHATEI_ORCHESTRATION_H_
