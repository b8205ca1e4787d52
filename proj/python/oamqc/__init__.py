# Copyright 2026 The oamqc Authors
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

"""Single-photon OAM circuit compiler and simulator."""

import json

from ._oamqc import (  # noqa: F401
    IoError,
    LeakageError,
    OamError,
    PhotonState,
    ValidationError,
    basis_state,
    decompose_two_level,
    demux,
    demux_cost,
    distance,
    extract,
    extraction_survival,
    from_amplitudes,
    measure_bit,
    overlap,
    reintegrate,
    repeated_run_cost,
    repeated_run_readout,
    run_cli,
    sample_full_measurement,
    sorter_cost,
    survival_probability,
    to_bit_string,
    u2_to_optics,
    zeno_component_survival,
    zeno_survival_estimate,
    zeno_sweep,
)
from . import _oamqc


def compile_unitary(u, stages=None, input=None, expand=False):
    """Compile a unitary; returns (netlist dict, report dict)."""
    netlist, report = _oamqc._compile_unitary(u, stages, input, expand)
    return json.loads(netlist), json.loads(report)


def run_netlist(state, netlist):
    return _oamqc._run_netlist(state, json.dumps(netlist))


def verify(netlist, u):
    """Frobenius distance between the netlist's action and u."""
    return _oamqc._verify(json.dumps(netlist), u)


def effective_matrix(netlist):
    return _oamqc._effective_matrix(json.dumps(netlist))
