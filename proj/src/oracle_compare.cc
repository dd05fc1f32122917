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

#include "bohatei/oracle_compare.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <sstream>

#include "bohatei/errors.h"
#include "bohatei/instances.h"
#include "bohatei/io.h"
#include "bohatei/oracle.h"
#include "bohatei/rng.h"

namespace bohatei {
namespace {

double MsSince(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

double Quantile(std::vector<double> v, double q) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  // Lower median for even sizes keeps the value an observed gap.
  const std::size_t k = static_cast<std::size_t>(std::floor(q * (v.size() - 1)));
  return v[k];
}

}  // namespace

OracleCompareReport RunOracleComparison(int instances, std::uint64_t seed, double delta,
                                        const std::string& dump_dir) {
  if (instances < 0) throw InputError("instances must be >= 0");
  OracleCompareReport report;
  report.delta = delta;
  OracleInstance oi;
  oi.delta = delta;
  if (!dump_dir.empty()) std::filesystem::create_directories(dump_dir);
  const auto start = std::chrono::steady_clock::now();
  std::vector<double> gaps;

  for (int k = 0; k < instances; ++k) {
    OracleCompareRow row;
    row.index = k;
    row.seed = SplitMix64(seed * 0x100000001B3ULL + static_cast<std::uint64_t>(k));
    const ProblemInstance inst = RandomTinyInstance(row.seed);
    row.n_pops = inst.topo.NumPops();
    row.n_dcs = inst.topo.NumDatacenters();
    row.n_attacks = static_cast<int>(inst.lib.size());

    auto t0 = std::chrono::steady_clock::now();
    const DspResult dsp = DspGreedy(inst.topo, inst.traffic, inst.lib);
    const std::vector<SspResult> ssps = SspAll(inst.topo, dsp, inst.lib);
    row.greedy_ms = MsSince(t0);
    row.greedy_handled = dsp.HandledVolume(inst.traffic);
    row.greedy_cost = EvaluateCost(inst.topo, inst.traffic, dsp, ssps, inst.params);

    OracleResult oracle;
    t0 = std::chrono::steady_clock::now();
    try {
      oracle = OracleExact(oi, inst.topo, inst.traffic, inst.lib, inst.params);
    } catch (const OracleRefusal& e) {
      row.refused = true;
      row.refusal = e.what();
    }
    row.oracle_ms = MsSince(t0);
    if (row.refused) {
      ++report.refused;
      report.rows.push_back(row);
      continue;
    }
    ++report.solved;
    row.oracle_handled = oracle.handled;
    row.oracle_cost = oracle.objective;
    row.candidates = oracle.candidates_evaluated;
    row.handled_equal = std::abs(row.greedy_handled - row.oracle_handled) <=
                        1e-6 * std::max(1.0, row.oracle_handled);
    if (row.handled_equal) {
      ++report.handled_equal;
      row.gap = (row.greedy_cost - row.oracle_cost) / std::max(row.oracle_cost, 1e-9);
      gaps.push_back(row.gap);
      if (row.gap > 0.10) ++report.over_10pct;
    }

    if (!dump_dir.empty() && (!row.handled_equal || row.gap > 0.10)) {
      Json oracle_json = {{"handled", oracle.handled},
                          {"objective", oracle.objective},
                          {"wide_area_cost", oracle.wide_area_cost},
                          {"dc_cost", oracle.dc_cost},
                          {"f", oracle.f},
                          {"n_dc", oracle.n_dc},
                          {"n_srv", oracle.n_srv}};
      Json dump = {{"schema_version", 1},
                   {"seed", row.seed},
                   {"delta", delta},
                   {"topology", TopologyToJson(inst.topo)},
                   {"graphs", LibraryToJson(inst.lib)},
                   {"traffic", TrafficToJson(inst.traffic)},
                   {"cost_params", CostParamsToJson(inst.params)},
                   {"greedy", {{"handled", row.greedy_handled}, {"cost", row.greedy_cost},
                               {"assignment", AssignmentToJson({dsp, ssps})}}},
                   {"oracle", oracle_json},
                   {"handled_equal", row.handled_equal},
                   {"gap", row.gap}};
      row.dump_path = (std::filesystem::path(dump_dir) /
                       ("instance-" + std::to_string(k) + ".json")).string();
      WriteJsonFile(row.dump_path, dump);
    }
    report.rows.push_back(row);
  }
  report.median_gap = Quantile(gaps, 0.5);
  report.p90_gap = Quantile(gaps, 0.9);
  report.max_gap = gaps.empty() ? 0.0 : *std::max_element(gaps.begin(), gaps.end());
  report.total_ms = MsSince(start);
  return report;
}

std::string OracleCompareCsv(const OracleCompareReport& report) {
  std::ostringstream out;
  out.precision(10);
  out << "index,seed,pops,dcs,attacks,status,greedy_handled,oracle_handled,handled_equal,"
         "greedy_cost,oracle_cost,gap,candidates,dump\n";
  for (const OracleCompareRow& r : report.rows) {
    out << r.index << ',' << r.seed << ',' << r.n_pops << ',' << r.n_dcs << ',' << r.n_attacks
        << ',' << (r.refused ? "refused" : "solved") << ',' << r.greedy_handled << ','
        << r.oracle_handled << ',' << (r.handled_equal ? 1 : 0) << ',' << r.greedy_cost << ','
        << r.oracle_cost << ',' << r.gap << ',' << r.candidates << ',' << r.dump_path << '\n';
  }
  return out.str();
}

}  // namespace bohatei
