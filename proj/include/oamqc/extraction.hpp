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

#include <cstdint>
#include <span>
#include <vector>

#include "oamqc/elements.hpp"
#include "oamqc/state.hpp"

// Extraction gate E_m: moves the |m> component of a superposition in `src`
// into OAM 0 of the empty mode `dst`, leaving everything else in place.
//
// The physical gate is a Zeno chain: a -m hologram on src, then N stages of a
// weak beamsplitter BS(pi/2N) coupling src to dst followed by an OAM-0 filter
// on dst, then a +m hologram restoring the untouched indices. The shifted
// |m> component sees the N beamsplitters compose to BS(pi/2) and crosses over
// completely; every other component keeps amplitude cos^N(pi/2N) and loses
// the rest to the filters.

namespace oamqc {

/// Beamsplitter angle pi / (2N) of one Zeno stage.
double zeno_stage_angle(int stages);

/// cos^N(pi/2N): amplitude kept by a non-extracted component.
double zeno_amplitude_factor(int stages);

/// cos^{2N}(pi/2N): survival probability of a non-extracted component.
double zeno_component_survival(int stages);

/// First-order estimate 1 - pi^2 / (4N) of zeno_component_survival.
double zeno_survival_estimate(int stages);

/// Throws ValidationError on src == dst, negative modes or stages < 1.
void validate_spec(const ExtractionSpec& spec);

/// Lossless E_m. Rejects a destination already holding OAM 0.
PhotonState ideal_extract(const PhotonState& state, const ExtractionSpec& spec);

/// Inverse of ideal_extract. Rejects an occupied (src, m).
PhotonState ideal_reintegrate(const PhotonState& state,
                              const ExtractionSpec& spec);

/// [H_{-m} src] N x [BS(pi/2N) (dst, src), F_0 dst] [H_{+m} src].
/// The beamsplitter lists dst first so the crossing amplitude keeps its sign.
/// `mode_count` defaults to max(src, dst) + 1.
Netlist lower_extract_to_netlist(const ExtractionSpec& spec,
                                 int mode_count = 0, int width = 1);

Netlist lower_reintegrate_to_netlist(
    const ExtractionSpec& spec,
    ReintegrationOrder order = ReintegrationOrder::kRepeat,
    int mode_count = 0, int width = 1);

/// Runs the lowered Zeno netlist. IDEAL stages fall back to ideal_extract.
PhotonState zeno_extract(const PhotonState& state, const ExtractionSpec& spec);

PhotonState zeno_reintegrate(
    const PhotonState& state, const ExtractionSpec& spec,
    ReintegrationOrder order = ReintegrationOrder::kRepeat);

/// Closed-form result of zeno_extract: the m component crosses losslessly
/// and every other src component is scaled by cos^N(pi/2N). Requires dst to
/// be empty. Independent of the element simulator.
PhotonState analytic_extract(const PhotonState& state,
                             const ExtractionSpec& spec);

/// Closed-form result of zeno_reintegrate. Requires dst to hold only OAM 0.
PhotonState analytic_reintegrate(
    const PhotonState& state, const ExtractionSpec& spec,
    ReintegrationOrder order = ReintegrationOrder::kRepeat);

/// |alpha_m|^2 + (sum_{l != m} |alpha_l|^2) cos^{2N}(pi/2N), where
/// input_coeffs[l] is alpha_l for l = 0, 1, ...
double extraction_survival(const ExtractionSpec& spec,
                           std::span<const Amplitude> input_coeffs);

struct ZenoSweepRow {
  int stages = 0;
  double analytic_survival = 0.0;
  double simulated_survival = 0.0;
  double estimate = 0.0;  // 1 - pi^2/4N
};

/// Survival of a single non-extracted component |ell> (ell != m) for each N.
std::vector<ZenoSweepRow> zeno_sweep(OamIndex m, OamIndex ell,
                                     std::span<const int> stage_counts);

/// Result of sampling absorption events filter by filter.
struct MonteCarloResult {
  std::int64_t runs = 0;
  std::int64_t survived = 0;
  /// Absorption count at each filter application, in netlist order.
  std::vector<std::int64_t> absorbed_at;

  double survival_fraction() const {
    return runs == 0 ? 0.0 : static_cast<double>(survived) / runs;
  }
};

/// Runs the netlist `runs` times, sampling at every filter whether the photon
/// is absorbed. Run r draws from Rng(Rng::derive(seed, r)).
MonteCarloResult monte_carlo_run(const PhotonState& state,
                                 const Netlist& netlist, std::int64_t runs,
                                 std::uint64_t seed);

}  // namespace oamqc
