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

#ifndef BOHATEI_ORACLE_COMPARE_H_
#define BOHATEI_ORACLE_COMPARE_H_

#include <cstdint>
#include <string>
#include <vector>

namespace bohatei {

struct OracleCompareRow {
  int index = 0;
  std::uint64_t seed = 0;
  int n_pops = 0;
  int n_dcs = 0;
  int n_attacks = 0;
  bool refused = false;
  std::string refusal;
  double greedy_handled = 0.0;
  double oracle_handled = 0.0;
  double greedy_cost = 0.0;
  double oracle_cost = 0.0;
  // (greedy - oracle) / max(oracle, 1e-9); only meaningful when handled_equal.
  double gap = 0.0;
  bool handled_equal = false;
  long candidates = 0;
  double greedy_ms = 0.0;
  double oracle_ms = 0.0;
  std::string dump_path;  // set when the row was written as a counterexample
};

struct OracleCompareReport {
  double delta = 0.05;
  std::vector<OracleCompareRow> rows;
  int solved = 0;
  int refused = 0;
  int handled_equal = 0;
  // Over solved instances with equal handled volume.
  double median_gap = 0.0;
  double p90_gap = 0.0;
  double max_gap = 0.0;
  int over_10pct = 0;
  double total_ms = 0.0;

  double HandledEqualFraction() const {
    return solved == 0 ? 0.0 : static_cast<double>(handled_equal) / solved;
  }
};

// Greedy (DSP + SSP) against the exhaustive oracle on `instances` random
// tiny instances derived from `seed`. Instances whose handled volume differs
// or whose cost gap exceeds 10% are written to dump_dir (when nonempty).
OracleCompareReport RunOracleComparison(int instances, std::uint64_t seed, double delta,
                                        const std::string& dump_dir = "");

std::string OracleCompareCsv(const OracleCompareReport& report);

}  // namespace bohatei

#endif  // BOHATEI_ORACLE_COMPARE_H_
