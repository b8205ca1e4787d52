// Copyright 2026 The oamqc Authors
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

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "oamqc/cli.hpp"
#include "oamqc/compiler.hpp"
#include "oamqc/error.hpp"
#include "oamqc/extraction.hpp"
#include "oamqc/json_io.hpp"
#include "oamqc/readout.hpp"

namespace py = pybind11;
using namespace oamqc;

namespace {

using ModeMap = std::map<std::pair<int, std::int64_t>, Amplitude>;

PhotonState make_state(int width, const ModeMap& amps) {
  AmplitudeMap out;
  for (const auto& [key, amp] : amps) out.emplace(ModeKey{key.first, key.second}, amp);
  return PhotonState(width, std::move(out));
}

ModeMap state_items(const PhotonState& state) {
  ModeMap out;
  for (const auto& [key, amp] : state.amplitudes()) out.emplace(std::pair{key.mode, key.ell}, amp);
  return out;
}

Netlist parse_netlist(const std::string& text) {
  return io::netlist_from_json(io::Json::parse(text));
}

py::dict cost_dict(const ReadoutCost& cost) {
  py::dict d;
  d["decision_points"] = cost.decision_points;
  d["arms"] = cost.arms;
  d["runs"] = cost.runs;
  d["cnot_count"] = cost.cnot_count;
  return d;
}

ExtractionSpec spec(OamIndex m, Stages stages, ModeIndex src, ModeIndex dst) {
  return ExtractionSpec{m, src, dst, stages};
}

ReintegrationOrder parse_order(const std::string& order) {
  if (order == "repeat") return ReintegrationOrder::kRepeat;
  if (order == "reversed") return ReintegrationOrder::kReversedInverse;
  throw ValidationError("order must be 'repeat' or 'reversed'");
}

}  // namespace

PYBIND11_MODULE(_oamqc, m) {
  m.doc() = "Single-photon OAM circuit compiler and simulator";

  auto base = py::register_exception<OamError>(m, "OamError", PyExc_RuntimeError);
  py::register_exception<ValidationError>(m, "ValidationError", base.ptr());
  py::register_exception<LeakageError>(m, "LeakageError", base.ptr());
  py::register_exception<IoError>(m, "IoError", base.ptr());

  py::class_<PhotonState>(m, "PhotonState")
      .def(py::init(&make_state), py::arg("width"), py::arg("amplitudes") = ModeMap{})
      .def_property_readonly("width", &PhotonState::width)
      .def_property_readonly("dimension", &PhotonState::dimension)
      .def_property_readonly("amplitudes", &state_items)
      .def("amplitude", &PhotonState::amplitude, py::arg("mode"), py::arg("ell"))
      .def("coefficients", &PhotonState::coefficients, py::arg("mode"))
      .def("norm_squared", &PhotonState::norm_squared)
      .def("normalized", &PhotonState::normalized)
      .def("to_json", [](const PhotonState& s) { return io::state_to_json(s).dump(); })
      .def_static("from_json",
                  [](const std::string& text) {
                    return io::state_from_json(io::Json::parse(text));
                  })
      .def("__eq__", [](const PhotonState& a, const PhotonState& b) { return a == b; })
      .def("__repr__", [](const PhotonState& s) {
        std::ostringstream out;
        out << "PhotonState(width=" << s.width() << ", terms=" << s.amplitudes().size() << ")";
        return out.str();
      });

  m.def("basis_state", &basis_state, py::arg("mode"), py::arg("ell"), py::arg("width"));
  m.def(
      "from_amplitudes",
      [](ModeIndex mode, const std::vector<Amplitude>& coeffs, int width) {
        return from_amplitudes(mode, coeffs, width);
      },
      py::arg("mode"), py::arg("coeffs"), py::arg("width"));
  m.def("survival_probability", &survival_probability);
  m.def("overlap", &overlap);
  m.def("distance", &distance);

  m.def("zeno_component_survival", &zeno_component_survival, py::arg("stages"));
  m.def("zeno_survival_estimate", &zeno_survival_estimate, py::arg("stages"));
  m.def(
      "extraction_survival",
      [](OamIndex mm, int stages, const std::vector<Amplitude>& coeffs) {
        return extraction_survival(spec(mm, stages, 0, 1), coeffs);
      },
      py::arg("m"), py::arg("stages"), py::arg("coeffs"));
  m.def(
      "extract",
      [](const PhotonState& s, OamIndex mm, Stages stages, ModeIndex src, ModeIndex dst) {
        return zeno_extract(s, spec(mm, stages, src, dst));
      },
      py::arg("state"), py::arg("m"), py::arg("stages") = kIdeal, py::arg("src") = 0,
      py::arg("dst") = 1);
  m.def(
      "reintegrate",
      [](const PhotonState& s, OamIndex mm, Stages stages, ModeIndex src, ModeIndex dst,
         const std::string& order) {
        return zeno_reintegrate(s, spec(mm, stages, src, dst), parse_order(order));
      },
      py::arg("state"), py::arg("m"), py::arg("stages") = kIdeal, py::arg("src") = 0,
      py::arg("dst") = 1, py::arg("order") = "repeat");
  m.def(
      "zeno_sweep",
      [](OamIndex mm, OamIndex ell, const std::vector<int>& stages) {
        std::vector<std::tuple<int, double, double, double>> rows;
        for (const auto& r : zeno_sweep(mm, ell, stages)) {
          rows.emplace_back(r.stages, r.analytic_survival, r.simulated_survival, r.estimate);
        }
        return rows;
      },
      py::arg("m"), py::arg("ell"), py::arg("stages"));

  m.def(
      "decompose_two_level",
      [](const ComplexMatrix& u) {
        std::vector<std::tuple<OamIndex, OamIndex, Matrix2c>> out;
        for (const auto& f : decompose_two_level(u)) out.emplace_back(f.m, f.n, f.u);
        return out;
      },
      py::arg("u"));
  m.def(
      "u2_to_optics",
      [](const Matrix2c& u) {
        const U2Params p = u2_to_optics(u);
        return std::make_tuple(p.theta, p.phi_pre, p.phi_post, p.delta);
      },
      py::arg("u"));
  m.def(
      "_compile_unitary",
      [](const ComplexMatrix& u, Stages stages, std::optional<PhotonState> input,
         bool expand) {
        CompileResult r = compile_unitary(u, stages, input);
        const Netlist net = expand ? expand_macros(r.netlist) : r.netlist;
        return std::make_pair(io::netlist_to_json(net).dump(),
                              io::report_to_json(r.report).dump());
      },
      py::arg("u"), py::arg("stages") = kIdeal, py::arg("input") = std::nullopt,
      py::arg("expand") = false);
  m.def(
      "_run_netlist",
      [](const PhotonState& s, const std::string& netlist) {
        return run_netlist(s, parse_netlist(netlist));
      },
      py::arg("state"), py::arg("netlist"));
  m.def(
      "_verify",
      [](const std::string& netlist, const ComplexMatrix& u) {
        return reconstruct_and_verify(parse_netlist(netlist), u);
      },
      py::arg("netlist"), py::arg("u"));
  m.def(
      "_effective_matrix",
      [](const std::string& netlist) { return effective_matrix(parse_netlist(netlist)); },
      py::arg("netlist"));

  m.def("to_bit_string", &to_bit_string, py::arg("ell"), py::arg("n"));
  m.def(
      "sample_full_measurement",
      [](const PhotonState& s, ModeIndex mode, std::uint64_t seed) {
        return sample_full_measurement(s, mode, seed);
      },
      py::arg("state"), py::arg("mode") = 0, py::arg("seed") = 0);
  m.def(
      "measure_bit",
      [](const PhotonState& s, ModeIndex mode, int bit, std::uint64_t seed) {
        BitOutcome out = measure_bit(s, mode, bit, seed);
        return std::make_pair(out.bit, out.collapsed);
      },
      py::arg("state"), py::arg("mode"), py::arg("bit"), py::arg("seed") = 0);
  m.def(
      "repeated_run_readout",
      [](const std::function<PhotonState()>& factory, ModeIndex mode, int n,
         std::uint64_t seed, bool msb_first) {
        const auto r = repeated_run_readout(factory, mode, n, seed,
                                            msb_first ? BitOrder::kMsbFirst
                                                      : BitOrder::kLsbFirst);
        return std::make_pair(r.bits, cost_dict(r.cost));
      },
      py::arg("factory"), py::arg("mode"), py::arg("n"), py::arg("seed") = 0,
      py::arg("msb_first") = false);
  m.def(
      "demux",
      [](const PhotonState& s, ModeIndex mode) {
        DemuxResult r = demux(s, mode);
        return std::make_pair(r.path.amplitudes, cost_dict(r.cost));
      },
      py::arg("state"), py::arg("mode") = 0);
  m.def("sorter_cost", [](int n) { return cost_dict(sorter_cost(n)); }, py::arg("n"));
  m.def("demux_cost", [](int n) { return cost_dict(demux_cost(n)); }, py::arg("n"));
  m.def("repeated_run_cost", [](int n) { return cost_dict(repeated_run_cost(n)); },
        py::arg("n"));

  m.def(
      "run_cli",
      [](std::vector<std::string> args) {
        args.insert(args.begin(), "oamqc");
        std::ostringstream out;
        std::ostringstream err;
        const int code = cli::run(args, out, err);
        return std::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"));
}
