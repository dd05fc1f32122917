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

#include "bohatei/simulation.h"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>

#include "bohatei/errors.h"
#include "bohatei/orchestration.h"

namespace bohatei {
namespace {

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double Ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

// Shortest round-trip decimal form, so CSV bytes depend only on the values.
std::string Num(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace

void Scenario::Validate() const {
  if (schema_version != kScenarioSchemaVersion) {
    throw InputError("unsupported scenario schema_version " + std::to_string(schema_version) +
                     " (expected " + std::to_string(kScenarioSchemaVersion) + ")");
  }
  if (epochs < 1) throw InputError("epochs must be >= 1");
  if (seeds.empty()) throw InputError("scenario needs at least one seed");
  if (!(gamma >= 1.0) || !std::isfinite(gamma)) throw InputError("gamma must be >= 1");
  if (!(budget.b_gbps >= 0.0) || !std::isfinite(budget.b_gbps)) {
    throw InputError("budget must be finite and >= 0");
  }
  if (max_tag_bits < 1 || max_tag_bits > 40) throw InputError("max_tag_bits must be in [1, 40]");
  topo.Validate();
  ValidateLibrary(lib);
  params.Validate();
  if (lib.empty()) throw InputError("graph library is empty");
  if (topo.NumPops() < 1) throw InputError("topology has no pops");
  if (scripted) {
    if (static_cast<int>(scripted->size()) < epochs) {
      throw InputError("scripted trace has " + std::to_string(scripted->size()) +
                       " epochs, scenario needs " + std::to_string(epochs));
    }
    for (const TrafficMatrix& t : *scripted) {
      t.Validate(topo.NumPops(), static_cast<int>(lib.size()));
    }
  }
}

SimulationRun RunSimulation(const Scenario& sc, std::uint64_t seed) {
  sc.Validate();
  const int n_pops = sc.topo.NumPops();
  const int n_attacks = static_cast<int>(sc.lib.size());
  SimulationRun run;
  run.seed = seed;
  AdversaryStrategy adversary = sc.adversary;
  adversary.seed = seed;
  // Gamma is applied after the resource manager, not to the estimate.
  EstimatorState state(sc.estimator, n_pops, n_attacks, 1.0);
  Rng rng(seed, 0xE57);
  std::vector<TrafficMatrix> trace;
  std::vector<TrafficMatrix> provisioned_series;

  for (int t = 0; t < sc.epochs; ++t) {
    EpochRecord rec;
    rec.epoch = t;
    rec.actual = sc.scripted ? (*sc.scripted)[t]
                             : AdversaryNext(adversary, sc.budget, t, n_pops, n_attacks);

    Stopwatch watch;
    rec.estimate = Estimate(state, sc.budget, rng);
    run.times.estimate_ms += watch.Ms();

    watch = Stopwatch();
    DspResult dsp = DspGreedy(sc.topo, rec.estimate, sc.lib, sc.dsp_options);
    if (sc.gamma > 1.0) dsp = OverprovisionDsp(dsp, sc.gamma, sc.topo);
    run.times.dsp_ms += watch.Ms();
    rec.dsp_iterations = dsp.iterations;
    rec.handled_gbps = dsp.HandledVolume(rec.estimate);
    rec.t_left = dsp.t_left;
    rec.wide_area_cost = dsp.wide_area_cost;
    rec.total_vms = dsp.TotalVms();

    std::vector<SspResult> ssps;
    try {
      watch = Stopwatch();
      ssps = SspAll(sc.topo, dsp, sc.lib);
      run.times.ssp_ms += watch.Ms();
      rec.total_cost = EvaluateCost(sc.topo, rec.estimate, dsp, ssps, sc.params);
      rec.violations = static_cast<int>(
          CheckFeasibility(sc.topo, rec.estimate, sc.lib, dsp, ssps, sc.params).size());

      watch = Stopwatch();
      const std::vector<TagPool> pools =
          AssignAllTags(ssps, sc.lib, seed ^ (0x9E37ULL * (t + 1)), sc.max_tag_bits);
      const ForwardingPlan plan = SynthesizeRules(sc.topo, dsp, ssps, pools, sc.lib);
      run.times.orchestration_ms += watch.Ms();
      rec.tag_rules = plan.MaxRulesPerSwitch();
      rec.total_rules = plan.RuleCount();
      rec.tag_bits = plan.tag_bits;
    } catch (const CapacityError& e) {
      rec.infeasibility = e.what();
    }

    rec.provisioned = TrafficMatrix::Zero(n_pops, n_attacks);
    for (int e = 0; e < n_pops; ++e) {
      for (int a = 0; a < n_attacks; ++a) {
        double served = 0.0;
        for (double f : dsp.f[e][a]) served += f;
        rec.provisioned.t[e][a] = sc.gamma * served * rec.estimate.t[e][a];
      }
    }
    rec.loss = AccountLoss(rec.provisioned, rec.actual, sc.lib);

    state.Observe(rec.actual);
    trace.push_back(rec.actual);
    provisioned_series.push_back(rec.provisioned);
    run.records.push_back(std::move(rec));
  }
  run.regret = NormalizedRegret(trace, provisioned_series, sc.lib, sc.weights);
  return run;
}

ProvisioningTotals CompareProvisioning(const std::vector<std::vector<double>>& demand) {
  if (demand.empty() || demand[0].empty()) throw InputError("demand series is empty");
  ProvisioningTotals out;
  const std::size_t epochs = demand[0].size();
  for (const std::vector<double>& series : demand) {
    if (series.size() != epochs) throw InputError("demand series differ in length");
    double peak = 0.0;
    for (double v : series) {
      if (!(v >= 0.0) || !std::isfinite(v)) throw InputError("demand must be finite and >= 0");
      peak = std::max(peak, v);
      out.elastic_total += v;
    }
    out.static_peak_total += peak * static_cast<double>(epochs);
  }
  return out;
}

std::string EpochCsv(const std::vector<EpochRecord>& records) {
  std::ostringstream out;
  out << "epoch,actual_gbps,estimate_gbps,provisioned_gbps,handled_gbps,t_left,"
         "wide_area_cost,total_cost,total_vms,dsp_iterations,tag_rules,total_rules,tag_bits,"
         "wastage_gbps,evasion_gbps,wastage_vm,cum_wastage_gbps,cum_evasion_gbps,"
         "cum_wastage_vm,violations,infeasible\n";
  double cw = 0.0, ce = 0.0, cv = 0.0;
  for (const EpochRecord& r : records) {
    cw += r.loss.wastage_gbps;
    ce += r.loss.evasion_gbps;
    cv += r.loss.wastage_vm;
    out << r.epoch << ',' << Num(r.actual.Total()) << ',' << Num(r.estimate.Total()) << ','
        << Num(r.provisioned.Total()) << ',' << Num(r.handled_gbps) << ',' << Num(r.t_left)
        << ',' << Num(r.wide_area_cost) << ',' << Num(r.total_cost) << ',' << r.total_vms
        << ',' << r.dsp_iterations << ',' << r.tag_rules << ',' << r.total_rules << ','
        << r.tag_bits << ',' << Num(r.loss.wastage_gbps) << ',' << Num(r.loss.evasion_gbps)
        << ',' << Num(r.loss.wastage_vm) << ',' << Num(cw) << ',' << Num(ce) << ',' << Num(cv)
        << ',' << r.violations << ',' << (r.Infeasible() ? 1 : 0) << '\n';
  }
  return out.str();
}

void WriteEpochCsv(const std::vector<EpochRecord>& records, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << EpochCsv(records);
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace bohatei
