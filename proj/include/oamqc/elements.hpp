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

#include <cstddef>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "oamqc/state.hpp"

namespace oamqc {

/// Number of Zeno stages of an extraction gate; std::nullopt is the lossless
/// N -> infinity limit (IDEAL).
using Stages = std::optional<int>;
inline constexpr Stages kIdeal = std::nullopt;

/// Stage ordering used when undoing an extraction.
enum class ReintegrationOrder {
  /// The extraction chain run again with the beamsplitters reversed:
  /// N x [BS(-pi/2N), F_0 on dst]. Leaves no amplitude behind in dst.
  kRepeat,
  /// Element-wise inverse of the extraction netlist in reverse order:
  /// N x [F_0 on dst, BS(-pi/2N)]. The last beamsplitter leaks a small
  /// amplitude of the non-extracted states into dst.
  kReversedInverse,
};

/// Extraction of OAM `m` from spatial mode `src` into OAM 0 of mode `dst`.
struct ExtractionSpec {
  OamIndex m = 0;
  ModeIndex src = 0;
  ModeIndex dst = 1;
  Stages stages = kIdeal;

  bool operator==(const ExtractionSpec&) const = default;
};

struct PhaseShifter {
  ModeIndex mode = 0;
  double phi = 0.0;
  bool operator==(const PhaseShifter&) const = default;
};

struct Hologram {
  ModeIndex mode = 0;
  OamIndex k = 0;
  bool operator==(const Hologram&) const = default;
};

/// Acts on each OAM index separately as the rotation
/// (a, b) -> (a cos(theta) + b sin(theta), -a sin(theta) + b cos(theta))
/// with a in mode_a and b in mode_b.
struct BeamSplitter {
  ModeIndex mode_a = 0;
  ModeIndex mode_b = 1;
  double theta = 0.0;
  bool operator==(const BeamSplitter&) const = default;
};

/// Projector onto OAM `m` in one mode; everything else there is absorbed.
struct Filter {
  ModeIndex mode = 0;
  OamIndex m = 0;
  bool operator==(const Filter&) const = default;
};

/// Reflection, ell -> -ell.
struct Mirror {
  ModeIndex mode = 0;
  bool operator==(const Mirror&) const = default;
};

/// Macro for the extraction gate E_m. Runs as the ideal primitive when
/// spec.stages is IDEAL and as its Zeno netlist otherwise.
struct ExtractGate {
  ExtractionSpec spec;
  bool operator==(const ExtractGate&) const = default;
};

/// Macro for the inverse of ExtractGate.
struct ReintegrateGate {
  ExtractionSpec spec;
  ReintegrationOrder order = ReintegrationOrder::kRepeat;
  bool operator==(const ReintegrateGate&) const = default;
};

using Element = std::variant<PhaseShifter, Hologram, BeamSplitter, Filter,
                             Mirror, ExtractGate, ReintegrateGate>;

/// Ordered optical program over `mode_count` spatial modes for a `width`
/// qubit register.
struct Netlist {
  int width = 1;
  int mode_count = 1;
  std::vector<Element> elements;

  bool operator==(const Netlist&) const = default;
};

PhotonState apply_phase_shifter(const PhotonState& state, ModeIndex mode,
                                double phi);
PhotonState apply_hologram(const PhotonState& state, ModeIndex mode,
                           OamIndex k);
/// Throws ValidationError when mode_a == mode_b.
PhotonState apply_beamsplitter(const PhotonState& state, ModeIndex mode_a,
                               ModeIndex mode_b, double theta);
PhotonState apply_filter(const PhotonState& state, ModeIndex mode, OamIndex m);
PhotonState apply_mirror(const PhotonState& state, ModeIndex mode);

/// F_m built as H_{+m} . F_0 . H_{-m}. Equivalent to Filter{mode, m}.
std::vector<Element> filter_via_holograms(ModeIndex mode, OamIndex m);

PhotonState apply_element(const PhotonState& state, const Element& element);

/// Checks mode ranges, beamsplitter mode pairs, parameter finiteness and
/// extraction specs. Throws ValidationError.
void validate(const Netlist& netlist);

/// Applies every element in order. Rejects a width mismatch, an invalid
/// netlist, and states carrying amplitude in modes >= netlist.mode_count.
PhotonState run_netlist(const PhotonState& state, const Netlist& netlist);

/// Replaces finite-stage macros by their primitive elements. IDEAL macros
/// have no finite expansion and are kept.
Netlist expand_macros(const Netlist& netlist);

/// Number of primitive elements after expansion; IDEAL macros count as one.
std::size_t primitive_count(const Netlist& netlist);

struct ReflectionParityReport {
  std::vector<int> mirrors_per_mode;
  /// true where the mode sees an even number of mirrors.
  std::vector<bool> mode_ok;
  int total_mirrors = 0;
  bool all_even = true;
};

ReflectionParityReport check_reflection_parity(const Netlist& netlist);

namespace detail {
// In-place kernels shared by the public element functions and the simulators.
void phase_shift(AmplitudeMap& amps, ModeIndex mode, double phi);
void shift_oam(AmplitudeMap& amps, ModeIndex mode, OamIndex k);
void rotate_modes(AmplitudeMap& amps, ModeIndex mode_a, ModeIndex mode_b,
                  double theta);
/// Returns the absorbed probability.
double project(AmplitudeMap& amps, ModeIndex mode, OamIndex m);
void reflect(AmplitudeMap& amps, ModeIndex mode);
void apply_primitive(AmplitudeMap& amps, const Element& element);
}  // namespace detail

}  // namespace oamqc
