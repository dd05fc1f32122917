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

#include "bohatei/adaptation.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <numeric>

#include "bohatei/errors.h"

namespace bohatei {
namespace {

constexpr double kRegretEps = 1e-9;

std::string Lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

// Uniform over nonempty subsets of {0..n-1}.
std::vector<int> NonemptySubset(Rng& rng, int n) {
  std::vector<int> out;
  while (out.empty()) {
    for (int i = 0; i < n; ++i) {
      if (rng.Bernoulli(0.5)) out.push_back(i);
    }
  }
  return out;
}

std::vector<int> Range(int n) {
  std::vector<int> out(n);
  std::iota(out.begin(), out.end(), 0);
  return out;
}

TrafficMatrix Spread(const Budget& budget, int n_pops, int n_attacks,
                     const std::vector<int>& pops, const std::vector<int>& attacks) {
  TrafficMatrix t = TrafficMatrix::Zero(n_pops, n_attacks);
  const double share = budget.b_gbps / static_cast<double>(pops.size() * attacks.size());
  for (int e : pops) {
    for (int a : attacks) t.t[e][a] = share;
  }
  return t;
}

struct SteadyMix {
  int attack;
  std::vector<int> pops;
};

SteadyMix DrawSteady(std::uint64_t seed, std::uint64_t stream, int n_pops, int n_attacks) {
  Rng rng(seed, stream);
  SteadyMix mix;
  mix.attack = static_cast<int>(rng.Below(n_attacks));
  mix.pops = NonemptySubset(rng, n_pops);
  return mix;
}

}  // namespace

const char* AdversaryKindName(AdversaryKind kind) {
  switch (kind) {
    case AdversaryKind::kRandIngress: return "RandIngress";
    case AdversaryKind::kRandAttack: return "RandAttack";
    case AdversaryKind::kRandHybrid: return "RandHybrid";
    case AdversaryKind::kSteady: return "Steady";
    case AdversaryKind::kFlipPrevEpoch: return "FlipPrevEpoch";
  }
  return "?";
}

AdversaryKind ParseAdversaryKind(const std::string& name) {
  for (AdversaryKind k : AllAdversaryKinds()) {
    if (Lower(AdversaryKindName(k)) == Lower(name)) return k;
  }
  throw InputError("unknown adversary strategy '" + name + "'");
}

std::vector<AdversaryKind> AllAdversaryKinds() {
  return {AdversaryKind::kRandIngress, AdversaryKind::kRandAttack, AdversaryKind::kRandHybrid,
          AdversaryKind::kSteady, AdversaryKind::kFlipPrevEpoch};
}

TrafficMatrix AdversaryNext(const AdversaryStrategy& strategy, const Budget& budget,
                            int epoch, int n_pops, int n_attacks) {
  if (epoch < 0) throw InputError("epoch must be >= 0");
  if (n_pops < 1 || n_attacks < 1) throw InputError("need at least one pop and one attack");
  if (budget.b_gbps < 0.0 || !std::isfinite(budget.b_gbps)) {
    throw InputError("budget must be finite and >= 0");
  }
  Rng rng(strategy.seed, 0xADE0000000ULL + static_cast<std::uint64_t>(epoch));
  switch (strategy.kind) {
    case AdversaryKind::kRandIngress:
      return Spread(budget, n_pops, n_attacks, NonemptySubset(rng, n_pops), Range(n_attacks));
    case AdversaryKind::kRandAttack:
      return Spread(budget, n_pops, n_attacks, Range(n_pops), NonemptySubset(rng, n_attacks));
    case AdversaryKind::kRandHybrid: {
      std::vector<int> pops = NonemptySubset(rng, n_pops);
      return Spread(budget, n_pops, n_attacks, pops, NonemptySubset(rng, n_attacks));
    }
    case AdversaryKind::kSteady: {
      const SteadyMix mix = DrawSteady(strategy.seed, 0x57EAD, n_pops, n_attacks);
      return Spread(budget, n_pops, n_attacks, mix.pops, {mix.attack});
    }
    case AdversaryKind::kFlipPrevEpoch: {
      const SteadyMix first = DrawSteady(strategy.seed, 0xF11F0, n_pops, n_attacks);
      SteadyMix second = first;
      // Redraw until the two mixes differ (impossible with one cell).
      for (std::uint64_t k = 1; k < 64 && n_pops * n_attacks > 1; ++k) {
        second = DrawSteady(strategy.seed, 0xF11F0 + k, n_pops, n_attacks);
        if (second.attack != first.attack || second.pops != first.pops) break;
      }
      const SteadyMix& mix = epoch % 2 == 0 ? first : second;
      return Spread(budget, n_pops, n_attacks, mix.pops, {mix.attack});
    }
  }
  throw InputError("unknown adversary strategy");
}

const char* EstimatorKindName(EstimatorKind kind) {
  switch (kind) {
    case EstimatorKind::kFpl: return "FPL";
    case EstimatorKind::kPrevEpoch: return "PrevEpoch";
    case EstimatorKind::kUniform: return "Uniform";
  }
  return "?";
}

EstimatorKind ParseEstimatorKind(const std::string& name) {
  for (EstimatorKind k : {EstimatorKind::kFpl, EstimatorKind::kPrevEpoch, EstimatorKind::kUniform}) {
    if (Lower(EstimatorKindName(k)) == Lower(name)) return k;
  }
  throw InputError("unknown estimator '" + name + "'");
}

EstimatorState::EstimatorState(EstimatorKind kind, int n_pops, int n_attacks, double gamma)
    : kind_(kind), n_pops_(n_pops), n_attacks_(n_attacks), gamma_(gamma),
      sum_(TrafficMatrix::Zero(n_pops, n_attacks)) {
  if (n_pops < 1 || n_attacks < 1) throw InputError("need at least one pop and one attack");
  if (!(gamma >= 1.0) || !std::isfinite(gamma)) throw InputError("gamma must be >= 1");
}

void EstimatorState::Observe(const TrafficMatrix& actual) {
  actual.Validate(n_pops_, n_attacks_);
  for (int e = 0; e < n_pops_; ++e) {
    for (int a = 0; a < n_attacks_; ++a) sum_.t[e][a] += actual.t[e][a];
  }
  history_.push_back(actual);
}

TrafficMatrix EstimatorState::Mean() const {
  TrafficMatrix m = TrafficMatrix::Zero(n_pops_, n_attacks_);
  if (history_.empty()) return m;
  const double n = static_cast<double>(history_.size());
  for (int e = 0; e < n_pops_; ++e) {
    for (int a = 0; a < n_attacks_; ++a) m.t[e][a] = sum_.t[e][a] / n;
  }
  return m;
}

double FplPerturbationBound(const Budget& budget, int next_epoch, int n_pops, int n_attacks) {
  if (next_epoch < 1) throw InputError("next_epoch is 1-based");
  return 2.0 * budget.b_gbps / (static_cast<double>(next_epoch) * n_pops * n_attacks);
}

TrafficMatrix FplEstimate(const EstimatorState& state, const Budget& budget, Rng& rng) {
  TrafficMatrix est = state.Mean();
  const int next_epoch = static_cast<int>(state.history().size()) + 1;
  const double bound = FplPerturbationBound(budget, next_epoch, state.n_pops(), state.n_attacks());
  for (auto& row : est.t) {
    for (double& v : row) v = std::max(0.0, v + rng.Uniform(0.0, bound));
  }
  return est;
}

TrafficMatrix PrevEpochEstimate(const EstimatorState& state) {
  if (state.history().empty()) return TrafficMatrix::Zero(state.n_pops(), state.n_attacks());
  return state.history().back();
}

TrafficMatrix UniformEstimate(const Budget& budget, int n_pops, int n_attacks) {
  if (n_pops < 1 || n_attacks < 1) throw InputError("need at least one pop and one attack");
  TrafficMatrix t = TrafficMatrix::Zero(n_pops, n_attacks);
  const double share = budget.b_gbps / (static_cast<double>(n_pops) * n_attacks);
  for (auto& row : t.t) std::fill(row.begin(), row.end(), share);
  return t;
}

TrafficMatrix Estimate(const EstimatorState& state, const Budget& budget, Rng& rng) {
  TrafficMatrix est;
  switch (state.kind()) {
    case EstimatorKind::kFpl: est = FplEstimate(state, budget, rng); break;
    case EstimatorKind::kPrevEpoch: est = PrevEpochEstimate(state); break;
    case EstimatorKind::kUniform:
      est = UniformEstimate(budget, state.n_pops(), state.n_attacks());
      break;
  }
  for (auto& row : est.t) {
    for (double& v : row) v = std::max(0.0, v) * state.gamma();
  }
  return est;
}

EpochLoss AccountLoss(const TrafficMatrix& provisioned, const TrafficMatrix& actual,
                      const GraphLibrary& lib) {
  const int n_pops = actual.NumPops();
  const int n_attacks = actual.NumAttacks();
  provisioned.Validate(n_pops, n_attacks);
  if (!lib.empty() && static_cast<int>(lib.size()) != n_attacks) {
    throw InputError("library has " + std::to_string(lib.size()) + " graphs for " +
                     std::to_string(n_attacks) + " attack types");
  }
  EpochLoss out;
  for (int a = 0; a < n_attacks; ++a) {
    const double factor = lib.empty() ? 1.0 : GraphComputeFactor(lib[a]);
    for (int e = 0; e < n_pops; ++e) {
      const double diff = provisioned.t[e][a] - actual.t[e][a];
      if (diff > 0.0) {
        out.wastage_gbps += diff;
        out.wastage_vm += diff * factor;
      } else {
        out.evasion_gbps -= diff;
      }
    }
  }
  return out;
}

StaticSolution BestStaticHindsight(const std::vector<TrafficMatrix>& trace,
                                   const LossWeights& weights) {
  if (trace.empty()) throw InputError("best static solution needs a nonempty trace");
  const int n_pops = trace[0].NumPops();
  const int n_attacks = trace[0].NumAttacks();
  StaticSolution out;
  out.matrix = TrafficMatrix::Zero(n_pops, n_attacks);
  const std::size_t n = trace.size();
  std::vector<double> values(n);
  std::vector<double> prefix(n + 1);
  for (int e = 0; e < n_pops; ++e) {
    for (int a = 0; a < n_attacks; ++a) {
      for (std::size_t k = 0; k < n; ++k) {
        trace[k].Validate(n_pops, n_attacks);
        values[k] = trace[k].t[e][a];
      }
      std::sort(values.begin(), values.end());
      for (std::size_t k = 0; k < n; ++k) prefix[k + 1] = prefix[k] + values[k];
      // loss(u) = w_w * sum_{x<u}(u-x) + w_e * sum_{x>=u}(x-u).
      auto loss = [&](double u) {
        const std::size_t below = std::lower_bound(values.begin(), values.end(), u) - values.begin();
        const double under = u * below - prefix[below];
        const double over = (prefix[n] - prefix[below]) - u * (n - below);
        return weights.wastage * under + weights.evasion * over;
      };
      std::vector<double> candidates(values);
      candidates.push_back(prefix[n] / static_cast<double>(n));
      std::sort(candidates.begin(), candidates.end());
      double best_u = candidates[0];
      double best = loss(best_u);
      for (double u : candidates) {
        const double l = loss(u);
        if (l < best - 1e-12 * std::max(1.0, best)) {
          best = l;
          best_u = u;
        }
      }
      out.matrix.t[e][a] = best_u;
      out.loss += best;
    }
  }
  return out;
}

RegretReport NormalizedRegret(const std::vector<TrafficMatrix>& trace,
                              const std::vector<TrafficMatrix>& provisioned,
                              const GraphLibrary& lib, const LossWeights& weights) {
  if (trace.size() != provisioned.size()) {
    throw InputError("trace and provisioning series differ in length");
  }
  RegretReport r;
  r.best_static = BestStaticHindsight(trace, weights);
  for (std::size_t k = 0; k < trace.size(); ++k) {
    const EpochLoss l = AccountLoss(provisioned[k], trace[k], lib);
    r.epochs.push_back(l);
    r.cum_wastage_gbps += l.wastage_gbps;
    r.cum_evasion_gbps += l.evasion_gbps;
    r.cum_wastage_vm += l.wastage_vm;
    r.cum_loss += l.Combined(weights);
    const EpochLoss s = AccountLoss(r.best_static.matrix, trace[k], lib);
    r.static_wastage_gbps += s.wastage_gbps;
    r.static_wastage_vm += s.wastage_vm;
    r.static_evasion_gbps += s.evasion_gbps;
  }
  const double norm = std::max(r.best_static.loss, kRegretEps);
  r.regret = (r.cum_loss - r.best_static.loss) / norm;
  r.regret_g1 = weights.wastage * (r.cum_wastage_gbps - r.static_wastage_gbps) / norm;
  r.regret_g2 = weights.evasion * (r.cum_evasion_gbps - r.static_evasion_gbps) / norm;
  return r;
}

std::vector<double> RegretToDate(const std::vector<TrafficMatrix>& trace,
                                 const std::vector<TrafficMatrix>& provisioned,
                                 const LossWeights& weights) {
  if (trace.size() != provisioned.size()) {
    throw InputError("trace and provisioning series differ in length");
  }
  std::vector<double> out;
  if (trace.empty()) return out;
  const int n_pops = trace[0].NumPops();
  const int n_attacks = trace[0].NumAttacks();
  std::vector<std::vector<double>> sorted(static_cast<std::size_t>(n_pops) * n_attacks);
  std::vector<double> sums(sorted.size(), 0.0);
  double cum_loss = 0.0;
  for (std::size_t t = 0; t < trace.size(); ++t) {
    trace[t].Validate(n_pops, n_attacks);
    provisioned[t].Validate(n_pops, n_attacks);
    double static_loss = 0.0;
    for (int e = 0; e < n_pops; ++e) {
      for (int a = 0; a < n_attacks; ++a) {
        const double x = trace[t].t[e][a];
        const double p = provisioned[t].t[e][a];
        cum_loss += p >= x ? weights.wastage * (p - x) : weights.evasion * (x - p);
        std::vector<double>& v = sorted[e * n_attacks + a];
        v.insert(std::upper_bound(v.begin(), v.end(), x), x);
        double& total = sums[e * n_attacks + a];
        total += x;
        const double n = static_cast<double>(v.size());
        // Scan candidates in ascending order with a running prefix sum.
        auto loss_at = [&](double u, double below_sum, std::size_t below) {
          return weights.wastage * (u * below - below_sum) +
                 weights.evasion * ((total - below_sum) - u * (n - below));
        };
        double best = std::numeric_limits<double>::infinity();
        double prefix = 0.0;
        for (std::size_t k = 0; k < v.size(); ++k) {
          best = std::min(best, loss_at(v[k], prefix, k));
          prefix += v[k];
        }
        const double mean = total / n;
        const std::size_t below = std::lower_bound(v.begin(), v.end(), mean) - v.begin();
        double below_sum = 0.0;
        for (std::size_t k = 0; k < below; ++k) below_sum += v[k];
        best = std::min(best, loss_at(mean, below_sum, below));
        static_loss += best;
      }
    }
    out.push_back((cum_loss - static_loss) / std::max(static_loss, kRegretEps));
  }
  return out;
}

RegretReport RunRegret(const RegretRun& run, const GraphLibrary& lib,
                       std::vector<TrafficMatrix>* trace_out,
                       std::vector<TrafficMatrix>* provisioned_out) {
  if (run.epochs < 1) throw InputError("epochs must be >= 1");
  EstimatorState state(run.estimator, run.n_pops, run.n_attacks, run.gamma);
  Rng rng(run.estimator_seed, 0xE57);
  std::vector<TrafficMatrix> trace;
  std::vector<TrafficMatrix> provisioned;
  for (int t = 0; t < run.epochs; ++t) {
    provisioned.push_back(Estimate(state, run.budget, rng));
    trace.push_back(AdversaryNext(run.adversary, run.budget, t, run.n_pops, run.n_attacks));
    state.Observe(trace.back());
  }
  RegretReport report = NormalizedRegret(trace, provisioned, lib, run.weights);
  if (trace_out != nullptr) *trace_out = std::move(trace);
  if (provisioned_out != nullptr) *provisioned_out = std::move(provisioned);
  return report;
}

DspResult OverprovisionDsp(const DspResult& dsp, double gamma, const Topology& topo) {
  if (!(gamma >= 1.0) || !std::isfinite(gamma)) throw InputError("gamma must be >= 1");
  DspResult out = dsp;
  for (std::size_t d = 0; d < out.n_dc.size(); ++d) {
    auto& counts = out.n_dc[d];
    int used = 0;
    for (auto& per_attack : counts) {
      for (int& c : per_attack) {
        c = CeilVms(gamma * c);
        used += c;
      }
    }
    const int capacity = topo.datacenters.at(d).ComputeCapacity();
    while (used > capacity) {
      // Trim the largest surplus; ties go to the lowest (a, i).
      int best_a = -1, best_i = -1, best_surplus = 0;
      for (std::size_t a = 0; a < counts.size(); ++a) {
        for (std::size_t i = 0; i < counts[a].size(); ++i) {
          const int surplus = counts[a][i] - dsp.n_dc[d][a][i];
          if (surplus > best_surplus) {
            best_surplus = surplus;
            best_a = static_cast<int>(a);
            best_i = static_cast<int>(i);
          }
        }
      }
      if (best_a < 0) break;
      --counts[best_a][best_i];
      --used;
    }
  }
  for (auto& [key, pg] : out.physical) {
    pg = MakePhysicalGraph(pg.attack, pg.dc, pg.input_gbps, out.n_dc[key.second][key.first]);
  }
  return out;
}

}  // namespace bohatei
