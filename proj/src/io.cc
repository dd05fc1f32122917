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

#include "bohatei/io.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "bohatei/errors.h"

namespace bohatei {
namespace {

constexpr int kFileSchemaVersion = 1;

void CheckSchema(const Json& j, const char* what) {
  if (j.is_object() && j.contains("schema_version")) {
    const int v = j.at("schema_version").get<int>();
    if (v != kFileSchemaVersion) {
      throw InputError(std::string(what) + ": unsupported schema_version " + std::to_string(v));
    }
  }
}

// Converts library type errors into InputError with a short context.
template <typename Fn>
auto Guard(const char* what, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const Json::exception& e) {
    throw InputError(std::string(what) + ": " + e.what());
  }
}

std::string Resolve(const std::string& base_dir, const std::string& path) {
  const std::filesystem::path p(path);
  return p.is_absolute() ? path : (std::filesystem::path(base_dir) / p).string();
}

RuleMatch::Kind ParseMatchKind(const std::string& s) {
  if (s == "tag") return RuleMatch::Kind::kTag;
  if (s == "flowspec") return RuleMatch::Kind::kFlowSpec;
  if (s == "tunnel") return RuleMatch::Kind::kTunnel;
  throw InputError("unknown match kind '" + s + "'");
}

const char* MatchKindString(RuleMatch::Kind k) {
  switch (k) {
    case RuleMatch::Kind::kTag: return "tag";
    case RuleMatch::Kind::kFlowSpec: return "flowspec";
    case RuleMatch::Kind::kTunnel: return "tunnel";
  }
  return "?";
}

RuleAction::Kind ParseActionKind(const std::string& s) {
  if (s == "vm") return RuleAction::Kind::kVm;
  if (s == "switch") return RuleAction::Kind::kSwitch;
  if (s == "tunnel") return RuleAction::Kind::kTunnel;
  if (s == "customer") return RuleAction::Kind::kCustomer;
  throw InputError("unknown action kind '" + s + "'");
}

const char* ActionKindString(RuleAction::Kind k) {
  switch (k) {
    case RuleAction::Kind::kVm: return "vm";
    case RuleAction::Kind::kSwitch: return "switch";
    case RuleAction::Kind::kTunnel: return "tunnel";
    case RuleAction::Kind::kCustomer: return "customer";
  }
  return "?";
}

Json PhysicalToJson(const PhysicalGraph& pg) {
  Json inst = Json::array();
  for (const VmInstance& vm : pg.instances) {
    inst.push_back({{"vm_id", vm.vm_id}, {"node", vm.node}, {"server", vm.server}});
  }
  return {{"attack", pg.attack}, {"dc", pg.dc}, {"input_gbps", pg.input_gbps},
          {"vm_count", pg.vm_count}, {"instances", inst}};
}

PhysicalGraph PhysicalFromJson(const Json& j) {
  PhysicalGraph pg = MakePhysicalGraph(j.at("attack").get<int>(), j.at("dc").get<int>(),
                                       j.at("input_gbps").get<double>(),
                                       j.at("vm_count").get<std::vector<int>>());
  if (j.contains("instances")) {
    pg.instances.clear();
    for (const Json& v : j.at("instances")) {
      pg.instances.push_back({v.at("vm_id").get<int>(), v.at("node").get<int>(),
                              v.value("server", -1)});
    }
  }
  return pg;
}

}  // namespace

Json ReadJsonFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return Json::parse(buf.str());
  } catch (const Json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

void WriteTextFile(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << text;
  if (!out) throw IoError("write failed: " + path);
}

void WriteJsonFile(const std::string& path, const Json& j) {
  WriteTextFile(path, j.dump(2) + "\n");
}

Json TopologyToJson(const Topology& topo) {
  Json pops = Json::array();
  for (const Pop& p : topo.pops) pops.push_back({{"id", p.id}, {"name", p.name}});
  Json dcs = Json::array();
  for (const Datacenter& dc : topo.datacenters) {
    Json racks = Json::array();
    for (const Rack& r : dc.racks) {
      Json servers = Json::array();
      for (const Server& s : r.servers) servers.push_back({{"id", s.id}, {"vm_slots", s.vm_slots}});
      racks.push_back({{"id", r.id}, {"servers", servers}});
    }
    dcs.push_back({{"id", dc.id}, {"attach_pop", dc.attach_pop},
                   {"link_capacity_gbps", dc.link_capacity_gbps}, {"racks", racks}});
  }
  Json links = Json::array();
  for (const BackboneLink& l : topo.links) {
    links.push_back({{"a", l.a}, {"b", l.b}, {"capacity_gbps", l.capacity_gbps}});
  }
  return {{"schema_version", kFileSchemaVersion}, {"pops", pops}, {"datacenters", dcs},
          {"links", links}, {"latency", topo.latency}, {"notes", topo.notes}};
}

Topology TopologyFromJson(const Json& j) {
  return Guard("topology", [&] {
    CheckSchema(j, "topology");
    Topology topo;
    for (const Json& p : j.at("pops")) {
      topo.pops.push_back({p.at("id").get<int>(), p.value("name", "pop" + std::to_string(p.at("id").get<int>()))});
    }
    for (const Json& d : j.at("datacenters")) {
      Datacenter dc;
      dc.id = d.at("id").get<int>();
      dc.attach_pop = d.at("attach_pop").get<int>();
      dc.link_capacity_gbps = d.at("link_capacity_gbps").get<double>();
      for (const Json& r : d.at("racks")) {
        Rack rack;
        rack.id = r.at("id").get<int>();
        for (const Json& s : r.at("servers")) {
          rack.servers.push_back({s.at("id").get<int>(), s.at("vm_slots").get<int>()});
        }
        dc.racks.push_back(rack);
      }
      topo.datacenters.push_back(dc);
    }
    for (const Json& l : j.value("links", Json::array())) {
      topo.links.push_back({l.at("a").get<int>(), l.at("b").get<int>(),
                            l.at("capacity_gbps").get<double>()});
    }
    if (j.contains("notes")) topo.notes = j.at("notes").get<std::vector<std::string>>();
    const Json latency = j.value("latency", Json("derive"));
    if (latency.is_string()) {
      if (latency.get<std::string>() != "derive") {
        throw InputError("topology: latency must be a matrix or \"derive\"");
      }
      DeriveLatencyAndPaths(topo, j.value("hop_cost", 10.0));
    } else {
      // Explicit latency; paths still follow the backbone graph.
      const double hop_cost = j.value("hop_cost", 10.0);
      DeriveLatencyAndPaths(topo, hop_cost);
      topo.latency = latency.get<std::vector<std::vector<double>>>();
    }
    topo.Validate();
    return topo;
  });
}

Json GraphToJson(const AnnotatedGraph& g) {
  Json nodes = Json::array();
  for (const LogicalModule& m : g.nodes()) {
    nodes.push_back({{"id", m.id}, {"name", m.name}, {"kind", ModuleKindName(m.kind)},
                     {"capacity_gbps", m.capacity_gbps}, {"contexts", m.contexts},
                     {"bidirectional", m.bidirectional}});
  }
  Json edges = Json::array();
  for (const GraphEdge& e : g.edges()) {
    edges.push_back({{"from", e.from}, {"to", e.to}, {"weight", e.weight}, {"context", e.context}});
  }
  std::vector<double> roots;
  for (int i = 0; i < g.NumNodes(); ++i) roots.push_back(g.RootFraction(i));
  return {{"attack", {{"id", g.attack().id}, {"name", g.attack().name}}},
          {"nodes", nodes}, {"edges", edges}, {"root_fractions", roots}};
}

AnnotatedGraph GraphFromJson(const Json& j) {
  return Guard("graph", [&] {
    AttackType attack{j.at("attack").at("id").get<int>(), j.at("attack").value("name", "")};
    std::vector<LogicalModule> nodes;
    for (const Json& n : j.at("nodes")) {
      LogicalModule m;
      m.id = n.at("id").get<int>();
      m.name = n.value("name", "n" + std::to_string(m.id));
      m.kind = ParseModuleKind(n.value("kind", "analysis"));
      m.capacity_gbps = n.at("capacity_gbps").get<double>();
      m.contexts = n.value("contexts", 1);
      m.bidirectional = n.value("bidirectional", false);
      nodes.push_back(m);
    }
    std::vector<GraphEdge> edges;
    for (const Json& e : j.value("edges", Json::array())) {
      edges.push_back({e.at("from").get<int>(), e.at("to").get<int>(),
                       e.at("weight").get<double>(), e.value("context", 0)});
    }
    std::vector<double> roots;  // one entry per node; zero for non-roots
    if (j.contains("root_fractions")) roots = j.at("root_fractions").get<std::vector<double>>();
    return AnnotatedGraph(attack, nodes, edges, roots);
  });
}

Json LibraryToJson(const GraphLibrary& lib) {
  Json graphs = Json::array();
  for (const AnnotatedGraph& g : lib) graphs.push_back(GraphToJson(g));
  return {{"schema_version", kFileSchemaVersion}, {"graphs", graphs}};
}

GraphLibrary LibraryFromJson(const Json& j) {
  return Guard("graph library", [&] {
    CheckSchema(j, "graph library");
    if (j.is_string() && j.get<std::string>() == "builtin") return BuiltinLibrary();
    if (j.is_object() && j.value("builtin", false)) {
      LibraryDefaults d;
      d.analysis_capacity_gbps = j.value("analysis_capacity_gbps", d.analysis_capacity_gbps);
      d.response_capacity_gbps = j.value("response_capacity_gbps", d.response_capacity_gbps);
      return BuiltinLibrary(d);
    }
    const Json& graphs = j.is_array() ? j : j.at("graphs");
    GraphLibrary lib;
    for (const Json& g : graphs) lib.push_back(GraphFromJson(g));
    ValidateLibrary(lib);
    return lib;
  });
}

Json TrafficToJson(const TrafficMatrix& t) {
  return {{"schema_version", kFileSchemaVersion}, {"t", t.t}};
}

TrafficMatrix TrafficFromJson(const Json& j) {
  return Guard("traffic", [&] {
    CheckSchema(j, "traffic");
    TrafficMatrix t;
    t.t = (j.is_array() ? j : j.at("t")).get<std::vector<std::vector<double>>>();
    t.Validate(t.NumPops(), t.NumAttacks());
    return t;
  });
}

Json CostParamsToJson(const CostParams& p) {
  return {{"alpha", p.alpha}, {"intra_unit_cost", p.intra_unit_cost},
          {"inter_unit_cost", p.inter_unit_cost}, {"beta", p.beta}};
}

CostParams CostParamsFromJson(const Json& j) {
  return Guard("cost params", [&] {
    CostParams p;
    p.alpha = j.value("alpha", p.alpha);
    p.intra_unit_cost = j.value("intra_unit_cost", p.intra_unit_cost);
    p.inter_unit_cost = j.value("inter_unit_cost", p.inter_unit_cost);
    p.beta = j.value("beta", p.beta);
    p.Validate();
    return p;
  });
}

Json AssignmentToJson(const Assignment& a) {
  Json physical = Json::array();
  for (const auto& [key, pg] : a.dsp.physical) physical.push_back(PhysicalToJson(pg));
  Json dsp = {{"f", a.dsp.f}, {"n_dc", a.dsp.n_dc}, {"fractional_vms", a.dsp.fractional_vms},
              {"t_left", a.dsp.t_left}, {"wide_area_cost", a.dsp.wide_area_cost},
              {"iterations", a.dsp.iterations}, {"physical", physical}};
  Json ssps = Json::array();
  for (const SspResult& r : a.ssps) {
    Json placed = Json::array();
    for (const PhysicalGraph& pg : r.placed) placed.push_back(PhysicalToJson(pg));
    ssps.push_back({{"dc", r.dc}, {"n_srv", r.n_srv}, {"placed", placed},
                    {"intra_rack_units", r.intra_rack_units},
                    {"inter_rack_units", r.inter_rack_units}});
  }
  return {{"schema_version", kFileSchemaVersion}, {"dsp", dsp}, {"ssp", ssps}};
}

Assignment AssignmentFromJson(const Json& j) {
  return Guard("assignment", [&] {
    CheckSchema(j, "assignment");
    Assignment a;
    const Json& d = j.at("dsp");
    a.dsp.f = d.at("f").get<std::vector<std::vector<std::vector<double>>>>();
    a.dsp.n_dc = d.at("n_dc").get<std::vector<std::vector<std::vector<int>>>>();
    if (d.contains("fractional_vms")) {
      a.dsp.fractional_vms =
          d.at("fractional_vms").get<std::vector<std::vector<std::vector<double>>>>();
    }
    a.dsp.t_left = d.value("t_left", 0.0);
    a.dsp.wide_area_cost = d.value("wide_area_cost", 0.0);
    a.dsp.iterations = d.value("iterations", 0);
    for (const Json& p : d.value("physical", Json::array())) {
      PhysicalGraph pg = PhysicalFromJson(p);
      a.dsp.physical.emplace(std::make_pair(pg.attack, pg.dc), pg);
    }
    for (const Json& r : j.value("ssp", Json::array())) {
      SspResult s;
      s.dc = r.at("dc").get<int>();
      s.n_srv = r.at("n_srv").get<std::vector<std::vector<std::vector<int>>>>();
      for (const Json& p : r.at("placed")) s.placed.push_back(PhysicalFromJson(p));
      s.intra_rack_units = r.value("intra_rack_units", 0.0);
      s.inter_rack_units = r.value("inter_rack_units", 0.0);
      a.ssps.push_back(s);
    }
    return a;
  });
}

Json ViolationsToJson(const std::vector<Violation>& v) {
  Json out = Json::array();
  for (const Violation& x : v) {
    out.push_back({{"constraint", x.constraint}, {"indices", x.indices}, {"slack", x.slack},
                   {"message", x.message}});
  }
  return out;
}

Json PlanToJson(const ForwardingPlan& plan) {
  Json wide = Json::array();
  for (const auto& [key, splits] : plan.wide_area) {
    Json s = Json::array();
    for (const WideAreaSplit& w : splits) s.push_back({{"dc", w.dc}, {"weight", w.weight}});
    wide.push_back({{"e", key.first}, {"a", key.second}, {"splits", s}});
  }
  Json switches = Json::object();
  for (const auto& [sw, rules] : plan.dc_tables) {
    Json list = Json::array();
    for (const auto& [match, action] : rules) {
      Json targets = Json::array();
      for (const auto& [t, w] : action.targets) targets.push_back({{"to", t}, {"weight", w}});
      list.push_back({{"match", {{"kind", MatchKindString(match.kind)}, {"value", match.value}}},
                      {"action", {{"kind", ActionKindString(action.kind)}, {"targets", targets}}}});
    }
    switches[sw] = list;
  }
  Json pins = Json::array();
  for (const auto& [key, value] : plan.bidi_pins) {
    pins.push_back({{"dc", key.first}, {"tag", key.second}, {"pinned_dc", value.first},
                    {"vm", value.second}});
  }
  Json pools = Json::array();
  for (const TagPool& p : plan.pools) {
    Json entries = Json::array();
    for (const auto& [key, tags] : p.pools) {
      entries.push_back({{"vm", key.first}, {"context", key.second}, {"tags", tags}});
    }
    Json returns = Json::array();
    for (const auto& [vm, tag] : p.return_tags) returns.push_back({{"vm", vm}, {"tag", tag}});
    Json targets = Json::array();
    for (const auto& [tag, t] : p.targets) {
      const char* kind = t.kind == TagTarget::Kind::kVm         ? "vm"
                         : t.kind == TagTarget::Kind::kCustomer ? "customer"
                                                                : "return";
      targets.push_back({{"tag", tag}, {"kind", kind}, {"vm", t.vm_id}});
    }
    pools.push_back({{"attack", p.attack}, {"dc", p.dc}, {"pools", entries},
                     {"entry_tags", p.entry_tags}, {"entry_weights", p.entry_weights},
                     {"return_tags", returns}, {"targets", targets}});
  }
  return {{"schema_version", kFileSchemaVersion}, {"tag_bits", plan.tag_bits},
          {"wide_area", wide}, {"switches", switches}, {"bidi_pins", pins},
          {"pools", pools}, {"max_rules_per_switch", plan.MaxRulesPerSwitch()},
          {"total_rules", plan.RuleCount()}};
}

ForwardingPlan PlanFromJson(const Json& j) {
  return Guard("plan", [&] {
    CheckSchema(j, "plan");
    ForwardingPlan plan;
    plan.tag_bits = j.value("tag_bits", 0);
    for (const Json& w : j.value("wide_area", Json::array())) {
      std::vector<WideAreaSplit> splits;
      for (const Json& s : w.at("splits")) {
        splits.push_back({s.at("dc").get<int>(), s.at("weight").get<double>()});
      }
      plan.wide_area[{w.at("e").get<int>(), w.at("a").get<int>()}] = splits;
    }
    const Json switches = j.value("switches", Json::object());
    for (const auto& [sw, rules] : switches.items()) {
      auto& table = plan.dc_tables[sw];
      for (const Json& r : rules) {
        RuleMatch m{ParseMatchKind(r.at("match").at("kind").get<std::string>()),
                    r.at("match").at("value").get<std::string>()};
        RuleAction a;
        a.kind = ParseActionKind(r.at("action").at("kind").get<std::string>());
        for (const Json& t : r.at("action").at("targets")) {
          a.targets.push_back({t.at("to").get<std::string>(), t.at("weight").get<double>()});
        }
        if (!table.emplace(m, a).second) {
          throw ConflictError("plan: duplicate match on switch " + sw);
        }
      }
    }
    for (const Json& p : j.value("pools", Json::array())) {
      TagPool pool;
      pool.attack = p.at("attack").get<int>();
      pool.dc = p.at("dc").get<int>();
      for (const Json& e : p.at("pools")) {
        pool.pools[{e.at("vm").get<int>(), e.at("context").get<int>()}] =
            e.at("tags").get<std::vector<Tag>>();
      }
      pool.entry_tags = p.at("entry_tags").get<std::vector<Tag>>();
      pool.entry_weights = p.at("entry_weights").get<std::vector<double>>();
      for (const Json& r : p.at("return_tags")) {
        pool.return_tags[r.at("vm").get<int>()] = r.at("tag").get<Tag>();
      }
      for (const Json& t : p.at("targets")) {
        const std::string kind = t.at("kind").get<std::string>();
        TagTarget target;
        target.kind = kind == "vm"         ? TagTarget::Kind::kVm
                      : kind == "customer" ? TagTarget::Kind::kCustomer
                                           : TagTarget::Kind::kReturn;
        target.vm_id = t.at("vm").get<int>();
        pool.targets[t.at("tag").get<Tag>()] = target;
      }
      plan.pools.push_back(pool);
    }
    for (const Json& p : j.value("bidi_pins", Json::array())) {
      plan.bidi_pins[{p.at("dc").get<int>(), p.at("tag").get<Tag>()}] = {
          p.at("pinned_dc").get<int>(), p.at("vm").get<int>()};
    }
    return plan;
  });
}

Scenario ScenarioFromJson(const Json& j, const std::string& base_dir) {
  return Guard("scenario", [&] {
    Scenario sc;
    if (!j.contains("schema_version")) throw InputError("scenario: missing schema_version");
    sc.schema_version = j.at("schema_version").get<int>();
    if (sc.schema_version != kScenarioSchemaVersion) {
      throw InputError("scenario: unsupported schema_version " +
                       std::to_string(sc.schema_version));
    }

    const Json& topo = j.at("topology");
    if (topo.is_string()) {
      sc.topo = TopologyFromJson(ReadJsonFile(Resolve(base_dir, topo.get<std::string>())));
    } else if (topo.contains("generate")) {
      const Json& g = topo.at("generate");
      GeneratorOptions opt;
      opt.racks_per_dc = g.value("racks_per_dc", opt.racks_per_dc);
      opt.servers_per_rack = g.value("servers_per_rack", opt.servers_per_rack);
      opt.hop_cost = g.value("hop_cost", opt.hop_cost);
      opt.dc_link_capacity_gbps = g.value("dc_link_capacity_gbps", opt.dc_link_capacity_gbps);
      opt.backbone_capacity_gbps = g.value("backbone_capacity_gbps", opt.backbone_capacity_gbps);
      sc.topo = GenerateTopology(g.at("nodes").get<int>(), g.at("dc_slots").get<int>(),
                                 g.value("seed", std::uint64_t{1}), opt);
    } else {
      sc.topo = TopologyFromJson(topo);
    }

    const Json graphs = j.value("graphs", Json("builtin"));
    if (graphs.is_string() && graphs.get<std::string>() != "builtin") {
      sc.lib = LibraryFromJson(ReadJsonFile(Resolve(base_dir, graphs.get<std::string>())));
    } else {
      sc.lib = LibraryFromJson(graphs);
    }

    if (j.contains("adversary")) {
      const Json& adv = j.at("adversary");
      sc.adversary.kind = ParseAdversaryKind(adv.value("strategy", "RandHybrid"));
      sc.budget.b_gbps = adv.value("budget_gbps", sc.budget.b_gbps);
    }
    if (j.contains("scripted")) {
      std::vector<TrafficMatrix> trace;
      for (const Json& t : j.at("scripted")) trace.push_back(TrafficFromJson(t));
      sc.scripted = trace;
    }
    if (j.contains("estimator")) {
      const Json& est = j.at("estimator");
      sc.estimator = ParseEstimatorKind(est.value("kind", "FPL"));
      sc.gamma = est.value("gamma", 1.0);
    }
    sc.epochs = j.value("epochs", sc.epochs);
    if (j.contains("seeds")) sc.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
    if (j.contains("cost_params")) sc.params = CostParamsFromJson(j.at("cost_params"));
    if (j.contains("dsp")) {
      sc.dsp_options.ceil_per_assignment = j.at("dsp").value("ceil_per_assignment", false);
    }
    if (j.contains("loss_weights")) {
      sc.weights.wastage = j.at("loss_weights").value("wastage", 1.0);
      sc.weights.evasion = j.at("loss_weights").value("evasion", 1.0);
    }
    sc.max_tag_bits = j.value("max_tag_bits", sc.max_tag_bits);
    if (j.contains("output")) {
      const Json& out = j.at("output");
      if (out.contains("csv")) sc.csv_out = Resolve(base_dir, out.at("csv").get<std::string>());
      if (out.contains("json")) sc.json_out = Resolve(base_dir, out.at("json").get<std::string>());
    }
    sc.Validate();
    return sc;
  });
}

Scenario LoadScenario(const std::string& path) {
  const std::filesystem::path p(path);
  const std::string dir = p.has_parent_path() ? p.parent_path().string() : ".";
  return ScenarioFromJson(ReadJsonFile(path), dir);
}

Json ScenarioToJson(const Scenario& sc) {
  Json j = {{"schema_version", sc.schema_version},
            {"topology", TopologyToJson(sc.topo)},
            {"graphs", LibraryToJson(sc.lib)},
            {"adversary", {{"strategy", AdversaryKindName(sc.adversary.kind)},
                           {"budget_gbps", sc.budget.b_gbps}}},
            {"estimator", {{"kind", EstimatorKindName(sc.estimator)}, {"gamma", sc.gamma}}},
            {"epochs", sc.epochs},
            {"seeds", sc.seeds},
            {"cost_params", CostParamsToJson(sc.params)},
            {"dsp", {{"ceil_per_assignment", sc.dsp_options.ceil_per_assignment}}},
            {"loss_weights", {{"wastage", sc.weights.wastage}, {"evasion", sc.weights.evasion}}},
            {"max_tag_bits", sc.max_tag_bits}};
  if (sc.scripted) {
    Json trace = Json::array();
    for (const TrafficMatrix& t : *sc.scripted) trace.push_back(t.t);
    j["scripted"] = trace;
  }
  return j;
}

Json SimulationSummary(const Scenario& sc, const std::vector<SimulationRun>& runs) {
  Json per_seed = Json::array();
  for (const SimulationRun& run : runs) {
    double wastage = 0.0, evasion = 0.0, wastage_vm = 0.0, t_left = 0.0, cost = 0.0;
    long max_tag_rules = 0;
    Json infeasible = Json::array();
    for (const EpochRecord& r : run.records) {
      wastage += r.loss.wastage_gbps;
      evasion += r.loss.evasion_gbps;
      wastage_vm += r.loss.wastage_vm;
      t_left += r.t_left;
      cost += r.total_cost;
      max_tag_rules = std::max(max_tag_rules, r.tag_rules);
      if (r.Infeasible()) {
        infeasible.push_back({{"epoch", r.epoch}, {"violations", r.violations},
                              {"reason", r.infeasibility}});
      }
    }
    per_seed.push_back(
        {{"seed", run.seed},
         {"epochs", run.records.size()},
         {"totals", {{"wastage_gbps", wastage}, {"evasion_gbps", evasion},
                     {"wastage_vm", wastage_vm}, {"t_left", t_left}, {"total_cost", cost}}},
         {"max_tag_rules", max_tag_rules},
         {"regret", {{"normalized", run.regret.regret}, {"g1", run.regret.regret_g1},
                     {"g2", run.regret.regret_g2}, {"static_loss", run.regret.best_static.loss},
                     {"cumulative_loss", run.regret.cum_loss}}},
         {"stage_ms", {{"estimate", run.times.estimate_ms}, {"dsp", run.times.dsp_ms},
                       {"ssp", run.times.ssp_ms}, {"orchestration", run.times.orchestration_ms}}},
         {"infeasibility", infeasible}});
  }
  return {{"schema_version", kFileSchemaVersion},
          {"adversary", AdversaryKindName(sc.adversary.kind)},
          {"estimator", EstimatorKindName(sc.estimator)},
          {"gamma", sc.gamma},
          {"budget_gbps", sc.budget.b_gbps},
          {"runs", per_seed}};
}

}  // namespace bohatei
