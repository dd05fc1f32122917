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

// Command-line front end: simulation, topology generation, graph checks,
// resource management, orchestration, adaptation and provisioning reports.

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bohatei/adaptation.h"
#include "bohatei/defense_graph.h"
#include "bohatei/errors.h"
#include "bohatei/io.h"
#include "bohatei/oracle_compare.h"
#include "bohatei/orchestration.h"
#include "bohatei/resource_manager.h"
#include "bohatei/simulation.h"
#include "bohatei/topology.h"

namespace bohatei {
namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitInfeasible = 3;

std::uint64_t DefaultSeed() {
  const char* env = std::getenv("BOHATEI_SEED");
  if (env == nullptr || *env == '\0') return 1;
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(env, &used);
    if (used != std::string(env).size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw InputError(std::string("BOHATEI_SEED is not an unsigned integer: '") + env + "'");
  }
}

GraphLibrary LoadGraphs(const std::string& path) {
  return path.empty() || path == "builtin" ? BuiltinLibrary() : LibraryFromJson(ReadJsonFile(path));
}

std::string WithSuffix(const std::string& path, const std::string& suffix) {
  const std::filesystem::path p(path);
  return (p.parent_path() / (p.stem().string() + suffix + p.extension().string())).string();
}

void PrintViolations(const std::vector<Violation>& v) {
  for (const Violation& x : v) std::cerr << "violation: " << ToString(x) << "\n";
}

// ---------------------------------------------------------------- simulate

struct SimulateArgs {
  std::string scenario;
  std::string strategy = "RandHybrid";
  std::string estimator = "FPL";
  double gamma = 1.0;
  double budget = 100.0;
  int epochs = 500;
  int nodes = 24;
  int dc_slots = 1000;
  std::vector<std::uint64_t> seeds;
  std::string csv;
  std::string json;
};

int RunSimulate(const SimulateArgs& args) {
  Scenario sc;
  bool scenario_has_seeds = false;
  if (!args.scenario.empty()) {
    const Json j = ReadJsonFile(args.scenario);
    scenario_has_seeds = j.contains("seeds");
    sc = LoadScenario(args.scenario);
  } else {
    // The generated backbone follows the first seed, like the epoch loop.
    const std::uint64_t topo_seed = args.seeds.empty() ? DefaultSeed() : args.seeds.front();
    sc.topo = GenerateTopology(args.nodes, args.dc_slots, topo_seed);
    sc.lib = BuiltinLibrary();
    sc.adversary.kind = ParseAdversaryKind(args.strategy);
    sc.estimator = ParseEstimatorKind(args.estimator);
    sc.gamma = args.gamma;
    sc.budget.b_gbps = args.budget;
    sc.epochs = args.epochs;
  }
  if (!args.seeds.empty()) {
    sc.seeds = args.seeds;
  } else if (!scenario_has_seeds) {
    sc.seeds = {DefaultSeed()};
  }
  if (!args.csv.empty()) sc.csv_out = args.csv;
  if (!args.json.empty()) sc.json_out = args.json;
  sc.Validate();

  std::vector<SimulationRun> runs;
  for (std::uint64_t seed : sc.seeds) runs.push_back(RunSimulation(sc, seed));

  bool infeasible = false;
  for (const SimulationRun& run : runs) {
    double wastage = 0.0, evasion = 0.0, t_left = 0.0;
    int bad = 0;
    for (const EpochRecord& r : run.records) {
      wastage += r.loss.wastage_gbps;
      evasion += r.loss.evasion_gbps;
      t_left += r.t_left;
      if (r.Infeasible() || r.t_left > 1e-9) ++bad;
    }
    infeasible = infeasible || bad > 0;
    std::cout << "seed " << run.seed << ": epochs " << run.records.size() << ", wastage "
              << wastage << " Gbps, evasion " << evasion << " Gbps, unserved " << t_left
              << " Gbps, normalized regret " << run.regret.regret << " (G1 "
              << run.regret.regret_g1 << ", G2 " << run.regret.regret_g2 << ")";
    if (bad > 0) std::cout << ", " << bad << " epochs infeasible or short";
    std::cout << "\n";
    if (!sc.csv_out.empty()) {
      const std::string path =
          runs.size() == 1 ? sc.csv_out : WithSuffix(sc.csv_out, "-seed" + std::to_string(run.seed));
      WriteEpochCsv(run.records, path);
    }
  }
  if (!sc.json_out.empty()) WriteJsonFile(sc.json_out, SimulationSummary(sc, runs));
  return infeasible ? kExitInfeasible : kExitOk;
}

// ---------------------------------------------------------------- rm

int RunDsp(const std::string& topo_path, const std::string& traffic_path,
           const std::string& graphs_path, const std::string& out, bool ceil_each) {
  const Topology topo = TopologyFromJson(ReadJsonFile(topo_path));
  const TrafficMatrix traffic = TrafficFromJson(ReadJsonFile(traffic_path));
  const GraphLibrary lib = LoadGraphs(graphs_path);
  traffic.Validate(topo.NumPops(), static_cast<int>(lib.size()));
  DspOptions opt;
  opt.ceil_per_assignment = ceil_each;
  Assignment a;
  a.dsp = DspGreedy(topo, traffic, lib, opt);
  if (!out.empty()) WriteJsonFile(out, AssignmentToJson(a));
  std::cout << "handled " << a.dsp.HandledVolume(traffic) << " Gbps, unserved " << a.dsp.t_left
            << " Gbps, VMs " << a.dsp.TotalVms() << ", wide-area cost " << a.dsp.wide_area_cost
            << ", iterations " << a.dsp.iterations << "\n";
  if (a.dsp.t_left > 1e-9) {
    std::cerr << "infeasibility: " << a.dsp.t_left << " Gbps could not be assigned\n";
    return kExitInfeasible;
  }
  return kExitOk;
}

int RunSsp(const std::string& topo_path, const std::string& traffic_path,
           const std::string& graphs_path, const std::string& assignment_path,
           const std::string& out, const std::string& params_path) {
  const Topology topo = TopologyFromJson(ReadJsonFile(topo_path));
  const GraphLibrary lib = LoadGraphs(graphs_path);
  Assignment a = AssignmentFromJson(ReadJsonFile(assignment_path));
  try {
    a.ssps = SspAll(topo, a.dsp, lib);
  } catch (const InfeasibleError& e) {
    std::cerr << "infeasibility: " << e.what() << " (attack " << e.attack() << ", node "
              << e.node() << ")\n";
    return kExitInfeasible;
  }
  if (!out.empty()) WriteJsonFile(out, AssignmentToJson(a));
  double intra = 0.0, inter = 0.0;
  for (const SspResult& r : a.ssps) {
    intra += r.intra_rack_units;
    inter += r.inter_rack_units;
  }
  std::cout << "placed " << a.dsp.TotalVms() << " VMs, intra-rack units " << intra
            << ", inter-rack units " << inter << "\n";
  if (!traffic_path.empty()) {
    const TrafficMatrix traffic = TrafficFromJson(ReadJsonFile(traffic_path));
    const CostParams params =
        params_path.empty() ? CostParams{} : CostParamsFromJson(ReadJsonFile(params_path));
    const std::vector<Violation> v = CheckFeasibility(topo, traffic, lib, a.dsp, a.ssps, params);
    std::cout << "cost " << EvaluateCost(topo, traffic, a.dsp, a.ssps, params) << ", violations "
              << v.size() << "\n";
    PrintViolations(v);
    if (!v.empty() || a.dsp.t_left > 1e-9) return kExitInfeasible;
  }
  return kExitOk;
}

int RunOracleCompare(int instances, std::uint64_t seed, double delta, const std::string& format,
                     const std::string& out, const std::string& dump_dir) {
  const OracleCompareReport r = RunOracleComparison(instances, seed, delta, dump_dir);
  std::cout << "instances " << instances << ", solved " << r.solved << ", refused " << r.refused
            << ", handled equal " << r.handled_equal << "/" << r.solved << ", median gap "
            << r.median_gap << ", p90 gap " << r.p90_gap << ", over 10% " << r.over_10pct
            << ", time " << r.total_ms / 1000.0 << " s\n";
  if (!out.empty()) {
    if (format == "csv") {
      WriteTextFile(out, OracleCompareCsv(r));
    } else {
      Json rows = Json::array();
      for (const OracleCompareRow& row : r.rows) {
        rows.push_back({{"index", row.index}, {"seed", row.seed}, {"refused", row.refused},
                        {"greedy_handled", row.greedy_handled},
                        {"oracle_handled", row.oracle_handled},
                        {"greedy_cost", row.greedy_cost}, {"oracle_cost", row.oracle_cost},
                        {"gap", row.gap}, {"handled_equal", row.handled_equal},
                        {"dump", row.dump_path}});
      }
      WriteJsonFile(out, {{"delta", delta}, {"solved", r.solved}, {"refused", r.refused},
                          {"handled_equal", r.handled_equal}, {"median_gap", r.median_gap},
                          {"p90_gap", r.p90_gap}, {"max_gap", r.max_gap},
                          {"over_10pct", r.over_10pct}, {"rows", rows}});
    }
  }
  return kExitOk;
}

// ---------------------------------------------------------------- orch

int RunOrchRules(const std::string& in, const std::string& topo_path,
                 const std::string& graphs_path, const std::string& out, std::uint64_t seed,
                 int max_bits, bool dump) {
  const Topology topo = TopologyFromJson(ReadJsonFile(topo_path));
  const GraphLibrary lib = LoadGraphs(graphs_path);
  Assignment a = AssignmentFromJson(ReadJsonFile(in));
  if (a.ssps.empty()) {
    try {
      a.ssps = SspAll(topo, a.dsp, lib);
    } catch (const InfeasibleError& e) {
      std::cerr << "infeasibility: " << e.what() << "\n";
      return kExitInfeasible;
    }
  }
  ForwardingPlan plan;
  try {
    plan = SynthesizeRules(topo, a.dsp, a.ssps, AssignAllTags(a.ssps, lib, seed, max_bits), lib);
  } catch (const CapacityError& e) {
    std::cerr << "infeasibility: " << e.what() << "\n";
    return kExitInfeasible;
  }
  if (!out.empty()) WriteJsonFile(out, PlanToJson(plan));
  if (dump) std::cout << DumpPlan(plan);
  std::cout << "switches " << plan.dc_tables.size() << ", rules " << plan.RuleCount()
            << ", max per switch " << plan.MaxRulesPerSwitch() << ", tag bits " << plan.tag_bits
            << ", pins " << plan.bidi_pins.size() << "\n";
  const std::vector<std::string> gaps = VerifyPlan(plan, a.dsp, a.ssps, lib);
  for (const std::string& g : gaps) std::cerr << "plan gap: " << g << "\n";
  return gaps.empty() ? kExitOk : kExitInfeasible;
}

int RunOrchCount(const std::string& plan_path, long flows) {
  const ForwardingPlan plan = PlanFromJson(ReadJsonFile(plan_path));
  const RuleCountComparison c = CompareRuleCounts(plan, flows);
  std::cout << "tag_rules " << c.tag_rules << "\nper_flow_rules " << c.per_flow_rules << "\n";
  if (c.tag_rules > 0) {
    std::cout << "ratio " << static_cast<double>(c.per_flow_rules) / c.tag_rules << "\n";
  }
  return kExitOk;
}

// ---------------------------------------------------------------- adapt

struct RegretArgs {
  std::string strategy = "RandHybrid";
  std::string estimator = "FPL";
  int epochs = 500;
  int seeds = 10;
  double budget = 100.0;
  double gamma = 1.0;
  int pops = 24;
  int attacks = 4;
  std::string out;
};

int RunAdaptRegret(const RegretArgs& args) {
  const GraphLibrary builtin = BuiltinLibrary();
  if (args.attacks < 1) throw InputError("attacks must be >= 1");
  // The builtin library covers four attack types; extra types reuse its graphs.
  GraphLibrary lib;
  for (int a = 0; a < args.attacks; ++a) {
    const AnnotatedGraph& g = builtin[a % builtin.size()];
    lib.emplace_back(AttackType{a, g.attack().name}, g.nodes(), g.edges());
  }
  const std::uint64_t base = DefaultSeed();
  std::ostringstream csv;
  csv.precision(10);
  csv << "seed,epoch,wastage_gbps,evasion_gbps,wastage_vm,cum_g1_wastage_vm,"
         "cum_g2_evasion_gbps,normalized_regret\n";
  double mean = 0.0, mean_g1 = 0.0, mean_g2 = 0.0;
  for (int k = 0; k < args.seeds; ++k) {
    RegretRun run;
    run.adversary = {ParseAdversaryKind(args.strategy), base + k};
    run.estimator = ParseEstimatorKind(args.estimator);
    run.gamma = args.gamma;
    run.budget.b_gbps = args.budget;
    run.n_pops = args.pops;
    run.n_attacks = args.attacks;
    run.epochs = args.epochs;
    run.estimator_seed = SplitMix64(base + k);
    std::vector<TrafficMatrix> trace, provisioned;
    const RegretReport r = RunRegret(run, lib, &trace, &provisioned);
    mean += r.regret / args.seeds;
    mean_g1 += r.regret_g1 / args.seeds;
    mean_g2 += r.regret_g2 / args.seeds;
    if (!args.out.empty()) {
      const std::vector<double> to_date = RegretToDate(trace, provisioned);
      double g1 = 0.0, g2 = 0.0;
      for (std::size_t t = 0; t < r.epochs.size(); ++t) {
        g1 += r.epochs[t].wastage_vm;
        g2 += r.epochs[t].evasion_gbps;
        csv << base + k << ',' << t << ',' << r.epochs[t].wastage_gbps << ','
            << r.epochs[t].evasion_gbps << ',' << r.epochs[t].wastage_vm << ',' << g1 << ','
            << g2 << ',' << to_date[t] << '\n';
      }
    }
  }
  std::cout << "strategy " << args.strategy << ", estimator " << args.estimator << ", seeds "
            << args.seeds << ": mean normalized regret " << mean << " (G1 " << mean_g1
            << ", G2 " << mean_g2 << ")\n";
  if (!args.out.empty()) WriteTextFile(args.out, csv.str());
  return kExitOk;
}

// ---------------------------------------------------------------- compare

std::vector<double> ParseSeries(const std::string& s) {
  std::vector<double> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw InputError("bad number '" + item + "' in series '" + s + "'");
    }
  }
  return out;
}

int RunCompareProvisioning(const std::vector<std::string>& series, const std::string& in) {
  std::vector<std::vector<double>> demand;
  if (!in.empty()) {
    const Json j = ReadJsonFile(in);
    demand = (j.is_array() ? j : j.at("demand")).get<std::vector<std::vector<double>>>();
  }
  for (const std::string& s : series) demand.push_back(ParseSeries(s));
  const ProvisioningTotals t = CompareProvisioning(demand);
  std::cout << "static_peak_total " << t.static_peak_total << "\nelastic_total "
            << t.elastic_total << "\n";
  if (t.static_peak_total > 0.0) {
    std::cout << "reduction " << 100.0 * (1.0 - t.elastic_total / t.static_peak_total) << "%\n";
  }
  return kExitOk;
}

int Main(int argc, char** argv) {
  CLI::App app{"Elastic DDoS defense control-plane simulator"};
  app.require_subcommand(1);
  int code = kExitOk;

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "run the epoch loop");
  simulate->add_option("--scenario", sim.scenario, "scenario JSON file");
  simulate->add_option("--strategy", sim.strategy, "adversary strategy (no scenario)");
  simulate->add_option("--estimator", sim.estimator, "FPL, PrevEpoch or Uniform (no scenario)");
  simulate->add_option("--gamma", sim.gamma, "overprovision multiplier (no scenario)");
  simulate->add_option("--budget", sim.budget, "attack budget in Gbps (no scenario)");
  simulate->add_option("--epochs", sim.epochs, "epochs (no scenario)");
  simulate->add_option("--nodes", sim.nodes, "generated backbone size (no scenario)");
  simulate->add_option("--dc-slots", sim.dc_slots, "VM slots per datacenter (no scenario)");
  simulate->add_option("--seed", sim.seeds, "seed(s); default BOHATEI_SEED or 1");
  simulate->add_option("--csv", sim.csv, "per-epoch CSV output");
  simulate->add_option("--json", sim.json, "JSON summary output");
  simulate->callback([&] { code = RunSimulate(sim); });

  auto* topo = app.add_subcommand("topo", "topology tools");
  topo->require_subcommand(1);
  int nodes = 24, dc_slots = 1000;
  std::uint64_t topo_seed = 0;
  std::string topo_out;
  GeneratorOptions gen;
  auto* topo_gen = topo->add_subcommand("gen", "generate a random geometric backbone");
  topo_gen->add_option("--nodes", nodes, "backbone nodes")->required();
  topo_gen->add_option("--dc-slots", dc_slots, "VM slots per datacenter")->required();
  auto* topo_seed_opt = topo_gen->add_option("--seed", topo_seed, "seed");
  topo_gen->add_option("--racks", gen.racks_per_dc, "racks per datacenter");
  topo_gen->add_option("--servers", gen.servers_per_rack, "servers per rack");
  topo_gen->add_option("--hop-cost", gen.hop_cost, "latency cost per hop");
  topo_gen->add_option("--dc-link", gen.dc_link_capacity_gbps, "datacenter link Gbps");
  topo_gen->add_option("--backbone", gen.backbone_capacity_gbps, "backbone link Gbps");
  topo_gen->add_option("--out", topo_out, "output JSON");
  topo_gen->callback([&] {
    const std::uint64_t seed = topo_seed_opt->count() > 0 ? topo_seed : DefaultSeed();
    const Topology t = GenerateTopology(nodes, dc_slots, seed, gen);
    for (const std::string& note : t.notes) std::cerr << "note: " << note << "\n";
    if (topo_out.empty()) {
      std::cout << TopologyToJson(t).dump(2) << "\n";
    } else {
      WriteJsonFile(topo_out, TopologyToJson(t));
      std::cout << "pops " << t.NumPops() << ", datacenters " << t.NumDatacenters() << ", links "
                << t.links.size() << "\n";
    }
  });

  auto* graph = app.add_subcommand("graph", "defense graph tools");
  graph->require_subcommand(1);
  std::string graph_file;
  auto* graph_validate = graph->add_subcommand("validate", "validate a graph library file");
  graph_validate->add_option("file", graph_file, "graph JSON")->required();
  graph_validate->callback([&] {
    const GraphLibrary lib = LoadGraphs(graph_file);
    for (const AnnotatedGraph& g : lib) {
      std::cout << "ok " << g.attack().id << " " << g.attack().name << ": " << g.NumNodes()
                << " nodes, " << g.edges().size() << " edges, compute factor "
                << GraphComputeFactor(g) << " VM/Gbps\n";
      for (const std::string& w : g.warnings()) std::cout << "  warning: " << w << "\n";
    }
  });
  std::string demand_graphs;
  int demand_attack = 0;
  double demand_gbps = 0.0;
  auto* graph_demand = graph->add_subcommand("demand", "VM demand of one attack graph");
  graph_demand->add_option("--attack", demand_attack, "attack id")->required();
  graph_demand->add_option("--gbps", demand_gbps, "input volume")->required();
  graph_demand->add_option("--graphs", demand_graphs, "graph library (default builtin)");
  graph_demand->callback([&] {
    const GraphLibrary lib = LoadGraphs(demand_graphs);
    if (demand_attack < 0 || demand_attack >= static_cast<int>(lib.size())) {
      throw InputError("attack id " + std::to_string(demand_attack) + " out of range");
    }
    const AnnotatedGraph& g = lib[demand_attack];
    for (int i = 0; i < g.NumNodes(); ++i) {
      std::cout << g.node(i).name << " " << NodeDemandVms(g, i, demand_gbps) << "\n";
    }
    std::cout << "fine_grained " << FineGrainedDemandVms(g, demand_gbps) << "\nmonolithic "
              << MonolithicDemandVms(g, demand_gbps) << "\nmonolithic_x_nodes "
              << MonolithicDemandVms(g, demand_gbps) * g.NumNodes() << "\n";
  });

  auto* rm = app.add_subcommand("rm", "resource manager");
  rm->require_subcommand(1);
  std::string rm_topo, rm_traffic, rm_graphs, rm_out, rm_assignment, rm_params;
  bool ceil_each = false;
  auto* dsp = rm->add_subcommand("dsp", "datacenter selection");
  dsp->add_option("--topo", rm_topo, "topology JSON")->required();
  dsp->add_option("--traffic", rm_traffic, "traffic JSON")->required();
  dsp->add_option("--graphs", rm_graphs, "graph library (default builtin)");
  dsp->add_option("--out", rm_out, "assignment JSON output");
  dsp->add_flag("--ceil-per-assignment", ceil_each, "ceil VM demand per assignment");
  dsp->callback([&] { code = RunDsp(rm_topo, rm_traffic, rm_graphs, rm_out, ceil_each); });
  auto* ssp = rm->add_subcommand("ssp", "server selection on a DSP assignment");
  ssp->add_option("--topo", rm_topo, "topology JSON")->required();
  ssp->add_option("--assignment", rm_assignment, "assignment JSON from rm dsp")->required();
  ssp->add_option("--graphs", rm_graphs, "graph library (default builtin)");
  ssp->add_option("--traffic", rm_traffic, "traffic JSON (enables cost and feasibility check)");
  ssp->add_option("--params", rm_params, "cost parameter JSON");
  ssp->add_option("--out", rm_out, "assignment JSON output");
  ssp->callback([&] {
    code = RunSsp(rm_topo, rm_traffic, rm_graphs, rm_assignment, rm_out, rm_params);
  });
  int instances = 100;
  std::uint64_t oc_seed = 0;
  double delta = 0.05;
  std::string report = "csv", dump_dir;
  auto* oc = rm->add_subcommand("oracle-compare", "greedy against the exhaustive oracle");
  oc->add_option("--instances", instances, "random tiny instances");
  auto* oc_seed_opt = oc->add_option("--seed", oc_seed, "seed");
  oc->add_option("--delta", delta, "fraction grid step");
  oc->add_option("--report", report, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  oc->add_option("--out", rm_out, "report file");
  oc->add_option("--dump-dir", dump_dir, "directory for counterexample instances");
  oc->callback([&] {
    code = RunOracleCompare(instances, oc_seed_opt->count() > 0 ? oc_seed : DefaultSeed(),
                            delta, report, rm_out, dump_dir);
  });

  auto* orch = app.add_subcommand("orch", "orchestration");
  orch->require_subcommand(1);
  std::string orch_in, orch_topo, orch_graphs, orch_out, plan_path;
  std::uint64_t orch_seed = 0;
  int max_bits = 16;
  bool dump = false;
  long flows = 0;
  auto* rules = orch->add_subcommand("rules", "synthesize forwarding rules");
  rules->add_option("--in", orch_in, "assignment JSON")->required();
  rules->add_option("--topo", orch_topo, "topology JSON")->required();
  rules->add_option("--graphs", orch_graphs, "graph library (default builtin)");
  rules->add_option("--out", orch_out, "plan JSON output");
  auto* orch_seed_opt = rules->add_option("--seed", orch_seed, "tag shuffle seed");
  rules->add_option("--max-tag-bits", max_bits, "tag field width");
  rules->add_flag("--dump", dump, "print the plan, one rule per line");
  rules->callback([&] {
    code = RunOrchRules(orch_in, orch_topo, orch_graphs, orch_out,
                        orch_seed_opt->count() > 0 ? orch_seed : DefaultSeed(), max_bits, dump);
  });
  auto* count = orch->add_subcommand("count", "tag rules against per-flow rules");
  count->add_option("--plan", plan_path, "plan JSON")->required();
  count->add_option("--flows", flows, "number of flows")->required();
  count->callback([&] { code = RunOrchCount(plan_path, flows); });

  auto* adapt = app.add_subcommand("adapt", "strategy layer");
  adapt->require_subcommand(1);
  RegretArgs ra;
  auto* regret = adapt->add_subcommand("regret", "estimator regret against an adversary");
  regret->add_option("--strategy", ra.strategy, "adversary strategy");
  regret->add_option("--estimator", ra.estimator, "FPL, PrevEpoch or Uniform");
  regret->add_option("--epochs", ra.epochs, "epochs per run");
  regret->add_option("--seeds", ra.seeds, "number of seeds, from BOHATEI_SEED upwards");
  regret->add_option("--budget", ra.budget, "attack budget in Gbps");
  regret->add_option("--gamma", ra.gamma, "overprovision multiplier");
  regret->add_option("--pops", ra.pops, "ingress PoPs");
  regret->add_option("--attacks", ra.attacks, "attack types");
  regret->add_option("--out", ra.out, "per-epoch CSV");
  regret->callback([&] { code = RunAdaptRegret(ra); });

  auto* compare = app.add_subcommand("compare", "provisioning comparisons");
  compare->require_subcommand(1);
  std::vector<std::string> series;
  std::string series_file;
  auto* prov = compare->add_subcommand("provisioning", "static peak against elastic totals");
  prov->add_option("--series", series, "comma-separated per-epoch demand of one attack");
  prov->add_option("--in", series_file, "JSON {\"demand\": [[...], ...]}");
  prov->callback([&] { code = RunCompareProvisioning(series, series_file); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  } catch (const InputError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const IoError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const ConflictError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const InfeasibleError& e) {
    std::cerr << "infeasibility: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return code;
}

}  // namespace
}  // namespace bohatei

int main(int argc, char** argv) { return bohatei::Main(argc, argv); }
