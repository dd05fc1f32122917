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

// Python extension. Structured values cross the boundary as JSON text in the
// same schemas the CLI reads and writes; the bohatei package decodes them.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <string>
#include <tuple>
#include <vector>

#include "bohatei/adaptation.h"
#include "bohatei/defense_graph.h"
#include "bohatei/errors.h"
#include "bohatei/io.h"
#include "bohatei/oracle_compare.h"
#include "bohatei/orchestration.h"
#include "bohatei/resource_manager.h"
#include "bohatei/simulation.h"
#include "bohatei/topology.h"

namespace py = pybind11;

namespace bohatei {
namespace {

Json Parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
}

std::string Dump(const Json& j) { return j.dump(); }

std::string Dsp(const std::string& topo, const std::string& traffic, const std::string& lib) {
  Assignment a;
  a.dsp = DspGreedy(TopologyFromJson(Parse(topo)), TrafficFromJson(Parse(traffic)),
                    LibraryFromJson(Parse(lib)));
  return Dump(AssignmentToJson(a));
}

std::string Ssp(const std::string& topo, const std::string& assignment, const std::string& lib) {
  Assignment a = AssignmentFromJson(Parse(assignment));
  a.ssps = SspAll(TopologyFromJson(Parse(topo)), a.dsp, LibraryFromJson(Parse(lib)));
  return Dump(AssignmentToJson(a));
}

double Cost(const std::string& topo, const std::string& traffic, const std::string& assignment,
            const std::string& params) {
  const Assignment a = AssignmentFromJson(Parse(assignment));
  return EvaluateCost(TopologyFromJson(Parse(topo)), TrafficFromJson(Parse(traffic)), a.dsp,
                      a.ssps, CostParamsFromJson(Parse(params)));
}

std::string Feasibility(const std::string& topo, const std::string& traffic,
                        const std::string& lib, const std::string& assignment,
                        const std::string& params) {
  const Assignment a = AssignmentFromJson(Parse(assignment));
  return Dump(ViolationsToJson(CheckFeasibility(
      TopologyFromJson(Parse(topo)), TrafficFromJson(Parse(traffic)),
      LibraryFromJson(Parse(lib)), a.dsp, a.ssps, CostParamsFromJson(Parse(params)))));
}

std::string Plan(const std::string& topo, const std::string& assignment, const std::string& lib,
                 std::uint64_t seed, int max_bits) {
  const Assignment a = AssignmentFromJson(Parse(assignment));
  const GraphLibrary graphs = LibraryFromJson(Parse(lib));
  const std::vector<TagPool> pools = AssignAllTags(a.ssps, graphs, seed, max_bits);
  return Dump(PlanToJson(SynthesizeRules(TopologyFromJson(Parse(topo)), a.dsp, a.ssps, pools,
                                         graphs)));
}

std::tuple<long, long> RuleCounts(const std::string& plan, long n_flows) {
  const RuleCountComparison c = CompareRuleCounts(PlanFromJson(Parse(plan)), n_flows);
  return {c.tag_rules, c.per_flow_rules};
}

std::tuple<long, int> TagBound(const std::string& lib, int l_max, int k_max) {
  const GraphLibrary graphs = LibraryFromJson(Parse(lib));
  const TagSpaceBound b = k_max > 0 ? ComputeTagSpaceBound(graphs, l_max, k_max)
                                    : ComputeTagSpaceBound(graphs, l_max);
  return {b.max_tags, b.bits};
}

std::vector<std::vector<double>> Adversary(const std::string& kind, std::uint64_t seed,
                                           double budget, int epoch, int n_pops,
                                           int n_attacks) {
  return AdversaryNext({ParseAdversaryKind(kind), seed}, Budget{budget}, epoch, n_pops, n_attacks)
      .t;
}

py::dict Regret(const std::string& strategy, const std::string& estimator, std::uint64_t seed,
                int epochs, double budget, double gamma, int n_pops, int n_attacks) {
  if (n_attacks < 1) throw InputError("n_attacks must be >= 1");
  const GraphLibrary builtin = BuiltinLibrary();
  GraphLibrary lib;
  for (int a = 0; a < n_attacks; ++a) {
    const AnnotatedGraph& g = builtin[a % builtin.size()];
    lib.emplace_back(AttackType{a, g.attack().name}, g.nodes(), g.edges());
  }
  RegretRun run;
  run.adversary = {ParseAdversaryKind(strategy), seed};
  run.estimator = ParseEstimatorKind(estimator);
  run.gamma = gamma;
  run.budget.b_gbps = budget;
  run.n_pops = n_pops;
  run.n_attacks = n_attacks;
  run.epochs = epochs;
  run.estimator_seed = SplitMix64(seed);
  const RegretReport r = RunRegret(run, lib);
  py::dict out;
  out["regret"] = r.regret;
  out["regret_g1"] = r.regret_g1;
  out["regret_g2"] = r.regret_g2;
  out["cum_loss"] = r.cum_loss;
  out["cum_wastage_gbps"] = r.cum_wastage_gbps;
  out["cum_evasion_gbps"] = r.cum_evasion_gbps;
  out["cum_wastage_vm"] = r.cum_wastage_vm;
  return out;
}

py::dict OracleCompare(int instances, std::uint64_t seed, double delta,
                       const std::string& dump_dir) {
  const OracleCompareReport r = RunOracleComparison(instances, seed, delta, dump_dir);
  py::dict out;
  out["solved"] = r.solved;
  out["refused"] = r.refused;
  out["handled_equal"] = r.handled_equal;
  out["median_gap"] = r.median_gap;
  out["p90_gap"] = r.p90_gap;
  out["max_gap"] = r.max_gap;
  out["over_10pct"] = r.over_10pct;
  out["total_ms"] = r.total_ms;
  out["csv"] = OracleCompareCsv(r);
  return out;
}

std::tuple<double, double> Provisioning(const std::vector<std::vector<double>>& demand) {
  const ProvisioningTotals p = CompareProvisioning(demand);
  return {p.static_peak_total, p.elastic_total};
}

// Returns (per-epoch CSV, summary JSON) for one seed.
std::tuple<std::string, std::string> Simulate(const std::string& scenario,
                                              std::uint64_t seed,
                                              const std::string& base_dir) {
  const Scenario sc = ScenarioFromJson(Parse(scenario), base_dir);
  sc.Validate();
  std::vector<SimulationRun> runs;
  {
    py::gil_scoped_release release;
    runs.push_back(RunSimulation(sc, seed));
  }
  return {EpochCsv(runs.front().records), Dump(SimulationSummary(sc, runs))};
}

}  // namespace
}  // namespace bohatei

PYBIND11_MODULE(_core, m) {
  using namespace bohatei;
  m.doc() = "Bohatei control-plane simulator";

  // Subclass order matters: the most derived types are registered last.
  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  auto capacity_error = py::register_exception<CapacityError>(m, "CapacityError");
  py::register_exception<InfeasibleError>(m, "InfeasibleError", capacity_error);
  py::register_exception<ConflictError>(m, "ConflictError");
  py::register_exception<OracleRefusal>(m, "OracleRefusal");
  py::register_exception<IoError>(m, "IoError", PyExc_OSError);

  m.def(
      "generate_topology",
      [](int n_backbone, int dc_slots, std::uint64_t seed) {
        return Dump(TopologyToJson(GenerateTopology(n_backbone, dc_slots, seed)));
      },
      py::arg("n_backbone"), py::arg("dc_slots"), py::arg("seed"));
  m.def("builtin_library", [] { return Dump(LibraryToJson(BuiltinLibrary())); });
  m.def("validate_library",
        [](const std::string& lib) { ValidateLibrary(LibraryFromJson(Parse(lib))); });
  m.def(
      "fine_grained_vms",
      [](const std::string& graph, double t_gbps) {
        return FineGrainedDemandVms(GraphFromJson(Parse(graph)), t_gbps);
      },
      py::arg("graph"), py::arg("t_gbps"));
  m.def(
      "monolithic_vms",
      [](const std::string& graph, double t_gbps) {
        return MonolithicDemandVms(GraphFromJson(Parse(graph)), t_gbps);
      },
      py::arg("graph"), py::arg("t_gbps"));
  m.def("dsp", &Dsp, py::arg("topology"), py::arg("traffic"), py::arg("library"));
  m.def("ssp", &Ssp, py::arg("topology"), py::arg("assignment"), py::arg("library"));
  m.def("evaluate_cost", &Cost, py::arg("topology"), py::arg("traffic"), py::arg("assignment"),
        py::arg("params"));
  m.def("check_feasibility", &Feasibility, py::arg("topology"), py::arg("traffic"),
        py::arg("library"), py::arg("assignment"), py::arg("params"));
  m.def("plan", &Plan, py::arg("topology"), py::arg("assignment"), py::arg("library"),
        py::arg("seed"), py::arg("max_bits") = 16);
  m.def("rule_counts", &RuleCounts, py::arg("plan"), py::arg("n_flows"));
  m.def("tag_space_bound", &TagBound, py::arg("library"), py::arg("l_max"),
        py::arg("k_max") = 0);
  m.def("adversary_next", &Adversary, py::arg("strategy"), py::arg("seed"), py::arg("budget"),
        py::arg("epoch"), py::arg("n_pops"), py::arg("n_attacks"));
  m.def("run_regret", &Regret, py::arg("strategy"), py::arg("estimator"), py::arg("seed"),
        py::arg("epochs") = 500, py::arg("budget") = 100.0, py::arg("gamma") = 1.0,
        py::arg("n_pops") = 24, py::arg("n_attacks") = 4);
  m.def("oracle_compare", &OracleCompare, py::arg("instances"), py::arg("seed"),
        py::arg("delta") = 0.05, py::arg("dump_dir") = "");
  m.def("compare_provisioning", &Provisioning, py::arg("demand"));
  m.def("simulate", &Simulate, py::arg("scenario"), py::arg("seed"), py::arg("base_dir") = ".");
}
