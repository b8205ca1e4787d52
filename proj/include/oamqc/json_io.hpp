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

#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"
#include "oamqc/compiler.hpp"
#include "oamqc/elements.hpp"
#include "oamqc/extraction.hpp"
#include "oamqc/readout.hpp"
#include "oamqc/state.hpp"

// JSON file formats.
//
//   state:   {"n": 2, "amplitudes": [{"mode": 0, "l": 3, "re": 0.6, "im": 0}]}
//   netlist: {"n": 2, "modes": 3, "elements": [{"type": "bs", "mode_a": 0,
//             "mode_b": 1, "theta": 0.785}, ...]}
//            element types: ps{mode, phi}, holo{mode, k},
//            bs{mode_a, mode_b, theta}, filter{mode, m}, mirror{mode},
//            extract{m, src, dst, stages}, reintegrate{m, src, dst, stages,
//            order}; stages is an integer or "ideal", order is "repeat" or
//            "reversed".
//   unitary: {"d": 2, "rows": [[[re, im], [re, im]], [[re, im], [re, im]]]}
//
// Parsers throw ValidationError on malformed documents.

namespace oamqc::io {

using Json = nlohmann::json;

Json state_to_json(const PhotonState& state);
PhotonState state_from_json(const Json& doc);

Json element_to_json(const Element& element);
Element element_from_json(const Json& doc);

Json netlist_to_json(const Netlist& netlist);
Netlist netlist_from_json(const Json& doc);

Json unitary_to_json(const ComplexMatrix& u);
ComplexMatrix unitary_from_json(const Json& doc);

Json stages_to_json(Stages stages);
Stages stages_from_json(const Json& doc);
/// "ideal" or a positive integer.
Stages parse_stages(const std::string& text);

Json report_to_json(const CompileReport& report);
Json cost_to_json(const ReadoutCost& cost);
Json path_state_to_json(const PathQubitState& path);
Json parity_to_json(const ReflectionParityReport& report);
Json monte_carlo_to_json(const MonteCarloResult& result);

/// Parses a whole file. Throws IoError when unreadable, ValidationError when
/// it is not JSON.
Json read_json_file(const std::filesystem::path& path);

/// Writes via a temporary sibling and rename. Throws IoError.
void write_text_atomic(const std::filesystem::path& path,
                       const std::string& text);

/// Pretty-printed with a trailing newline; doubles use the shortest
/// round-trip representation.
std::string dump(const Json& doc);

}  // namespace oamqc::io
