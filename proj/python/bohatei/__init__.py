# Copyright 2026 The Bohatei Sim Authors. All rights reserved.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Python front end for the Bohatei control-plane simulator.

Topologies, graph libraries, assignments and plans are plain dicts in the
JSON schemas the CLI uses. Functions here encode them for the extension and
decode what comes back.
"""

import json
import os

from . import _core
from ._core import (
    CapacityError,
    ConflictError,
    InfeasibleError,
    InputError,
    IoError,
    OracleRefusal,
)

__all__ = [
    "CapacityError", "ConflictError", "InfeasibleError", "InputError", "IoError",
    "OracleRefusal", "default_seed", "generate_topology", "builtin_library",
    "validate_library", "fine_grained_vms", "monolithic_vms", "dsp", "ssp",
    "evaluate_cost", "check_feasibility", "plan", "rule_counts", "tag_space_bound",
    "adversary_next", "run_regret", "oracle_compare", "compare_provisioning", "simulate",
]


def _enc(value):
    return value if isinstance(value, str) else json.dumps(value)


def default_seed():
    """Seed from BOHATEI_SEED, or 1 when unset."""
    raw = os.environ.get("BOHATEI_SEED", "")
    if not raw:
        return 1
    if not raw.isdigit():
        raise InputError(f"BOHATEI_SEED is not an unsigned integer: {raw!r}")
    return int(raw)


def generate_topology(n_backbone, dc_slots, seed=None):
    seed = default_seed() if seed is None else seed
    return json.loads(_core.generate_topology(n_backbone, dc_slots, seed))


def builtin_library():
    return json.loads(_core.builtin_library())


def validate_library(library):
    _core.validate_library(_enc(library))


def fine_grained_vms(graph, t_gbps):
    return _core.fine_grained_vms(_enc(graph), t_gbps)


def monolithic_vms(graph, t_gbps):
    return _core.monolithic_vms(_enc(graph), t_gbps)


def dsp(topology, traffic, library):
    return json.loads(_core.dsp(_enc(topology), _enc(traffic), _enc(library)))


def ssp(topology, assignment, library):
    return json.loads(_core.ssp(_enc(topology), _enc(assignment), _enc(library)))


def evaluate_cost(topology, traffic, assignment, params):
    return _core.evaluate_cost(_enc(topology), _enc(traffic), _enc(assignment), _enc(params))


def check_feasibility(topology, traffic, library, assignment, params):
    return json.loads(_core.check_feasibility(
        _enc(topology), _enc(traffic), _enc(library), _enc(assignment), _enc(params)))


def plan(topology, assignment, library, seed=None, max_bits=16):
    seed = default_seed() if seed is None else seed
    return json.loads(_core.plan(_enc(topology), _enc(assignment), _enc(library), seed,
                                 max_bits))


def rule_counts(plan_, n_flows):
    """(tag rules on the busiest switch, per-flow rules)."""
    return _core.rule_counts(_enc(plan_), n_flows)


def tag_space_bound(library, l_max, k_max=0):
    """(max tags, bits); k_max 0 takes the largest context count."""
    return _core.tag_space_bound(_enc(library), l_max, k_max)


def adversary_next(strategy, seed, budget, epoch, n_pops, n_attacks):
    return _core.adversary_next(strategy, seed, budget, epoch, n_pops, n_attacks)


def run_regret(strategy, estimator, seed=None, **kwargs):
    seed = default_seed() if seed is None else seed
    return _core.run_regret(strategy, estimator, seed, **kwargs)


def oracle_compare(instances, seed=None, delta=0.05, dump_dir=""):
    seed = default_seed() if seed is None else seed
    return _core.oracle_compare(instances, seed, delta, dump_dir)


def compare_provisioning(demand):
    """(static peak total, elastic total) for demand[attack][epoch]."""
    return _core.compare_provisioning(demand)


def simulate(scenario, seed=None, base_dir="."):
    """Runs one seed; returns (per-epoch CSV text, summary dict)."""
    seed = default_seed() if seed is None else seed
    csv_text, summary = _core.simulate(_enc(scenario), seed, base_dir)
    return csv_text, json.loads(summary)
