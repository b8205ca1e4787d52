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

#include "oamqc/extraction.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

#include "oamqc/error.hpp"
#include "oamqc/random.hpp"

namespace oamqc {

namespace {

Amplitude take(AmplitudeMap& amps, ModeKey key) {
  auto it = amps.find(key);
  if (it == amps.end()) return {};
  Amplitude value = it->second;
  amps.erase(it);
  return value;
}

void put(AmplitudeMap& amps, ModeKey key, Amplitude value) {
  if (value != Amplitude{}) amps[key] += value;
}

int default_mode_count(const ExtractionSpec& spec, int mode_count) {
  return std::max(mode_count, std::max(spec.src, spec.dst) + 1);
}

int stages_or_throw(const ExtractionSpec& spec) {
  if (!spec.stages) {
    throw ValidationError("an IDEAL extraction gate has no finite netlist");
  }
  return *spec.stages;
}

// Zeno closed form shared by extraction and reintegration. The stage
// beamsplitter is BS(sign * theta) on (dst, src) after H_{-m} on src, so src
// index ell pairs with dst index ell - m.
//
// `filter_first` selects [F, BS] stages instead of [BS, F].
PhotonState zeno_closed_form(const PhotonState& state,
                             const ExtractionSpec& spec, double sign,
                             bool filter_first) {
  const int n = stages_or_throw(spec);
  const double theta = zeno_stage_angle(n);
  const double c = std::cos(theta);
  const double s = sign * std::sin(theta);
  const double c_pow = std::pow(c, n - 1);

  AmplitudeMap amps = state.amplitudes();
  // Split off both modes; everything else passes through untouched.
  std::map<OamIndex, Amplitude> src;  // keyed by shifted index ell - m
  std::map<OamIndex, Amplitude> dst;
  for (auto it = amps.begin(); it != amps.end();) {
    if (it->first.mode == spec.src) {
      src[it->first.ell - spec.m] = it->second;
      it = amps.erase(it);
    } else if (it->first.mode == spec.dst) {
      dst[it->first.ell] = it->second;
      it = amps.erase(it);
    } else {
      ++it;
    }
  }

  // Shifted index 0: N rotations by pi/2N compose to a quarter turn.
  {
    const Amplitude a = dst.contains(0) ? dst[0] : Amplitude{};
    const Amplitude b = src.contains(0) ? src[0] : Amplitude{};
    // BS(+pi/2): (a, b) -> (b, -a); BS(-pi/2): (a, b) -> (-b, a).
    const Amplitude out_dst = sign > 0 ? b : -b;
    const Amplitude out_src = sign > 0 ? -a : a;
    put(amps, ModeKey{spec.dst, 0}, out_dst);
    put(amps, ModeKey{spec.src, spec.m}, out_src);
    dst.erase(0);
    src.erase(0);
  }

  // Other indices: dst is filtered at every stage, src decays by cos(theta).
  std::set<OamIndex> indices;
  for (const auto& [ell, amp] : src) indices.insert(ell);
  for (const auto& [ell, amp] : dst) indices.insert(ell);
  for (OamIndex ell : indices) {
    const Amplitude a = dst.contains(ell) ? dst[ell] : Amplitude{};
    const Amplitude b = src.contains(ell) ? src[ell] : Amplitude{};
    if (filter_first) {
      // dst content dies in the first filter; the last beamsplitter leaks.
      put(amps, ModeKey{spec.src, ell + spec.m}, c_pow * c * b);
      put(amps, ModeKey{spec.dst, ell}, s * c_pow * b);
    } else {
      put(amps, ModeKey{spec.src, ell + spec.m}, c_pow * (c * b - s * a));
    }
  }
  return PhotonState(state.width(), std::move(amps));
}

}  // namespace

double zeno_stage_angle(int stages) {
  return std::numbers::pi / (2.0 * stages);
}

double zeno_amplitude_factor(int stages) {
  return std::pow(std::cos(zeno_stage_angle(stages)), stages);
}

double zeno_component_survival(int stages) {
  return std::pow(std::cos(zeno_stage_angle(stages)), 2 * stages);
}

double zeno_survival_estimate(int stages) {
  return 1.0 - std::numbers::pi * std::numbers::pi / (4.0 * stages);
}

void validate_spec(const ExtractionSpec& spec) {
  if (spec.src < 0 || spec.dst < 0) {
    throw ValidationError("extraction modes must be non-negative");
  }
  if (spec.src == spec.dst) {
    throw ValidationError("extraction needs distinct source and destination");
  }
  if (spec.stages && *spec.stages < 1) {
    std::ostringstream msg;
    msg << "extraction needs at least one Zeno stage, got " << *spec.stages;
    throw ValidationError(msg.str());
  }
}

PhotonState ideal_extract(const PhotonState& state,
                          const ExtractionSpec& spec) {
  validate_spec(spec);
  const Amplitude occupant = state.amplitude(spec.dst, 0);
  if (std::norm(occupant) > kNormTolerance) {
    std::ostringstream msg;
    msg << "destination mode " << spec.dst << " already holds OAM 0";
    throw ValidationError(msg.str());
  }
  AmplitudeMap amps = state.amplitudes();
  put(amps, ModeKey{spec.dst, 0}, take(amps, ModeKey{spec.src, spec.m}));
  return PhotonState(state.width(), std::move(amps));
}

PhotonState ideal_reintegrate(const PhotonState& state,
                              const ExtractionSpec& spec) {
  validate_spec(spec);
  const Amplitude occupant = state.amplitude(spec.src, spec.m);
  if (std::norm(occupant) > kNormTolerance) {
    std::ostringstream msg;
    msg << "source mode " << spec.src << " already holds OAM " << spec.m;
    throw ValidationError(msg.str());
  }
  AmplitudeMap amps = state.amplitudes();
  put(amps, ModeKey{spec.src, spec.m}, take(amps, ModeKey{spec.dst, 0}));
  return PhotonState(state.width(), std::move(amps));
}

Netlist lower_extract_to_netlist(const ExtractionSpec& spec, int mode_count,
                                 int width) {
  validate_spec(spec);
  const int n = stages_or_throw(spec);
  const double theta = zeno_stage_angle(n);
  Netlist out{width, default_mode_count(spec, mode_count), {}};
  out.elements.reserve(2 + 2 * static_cast<std::size_t>(n));
  out.elements.push_back(Hologram{spec.src, -spec.m});
  for (int i = 0; i < n; ++i) {
    out.elements.push_back(BeamSplitter{spec.dst, spec.src, theta});
    out.elements.push_back(Filter{spec.dst, 0});
  }
  out.elements.push_back(Hologram{spec.src, spec.m});
  return out;
}

Netlist lower_reintegrate_to_netlist(const ExtractionSpec& spec,
                                     ReintegrationOrder order, int mode_count,
                                     int width) {
  validate_spec(spec);
  const int n = stages_or_throw(spec);
  const double theta = -zeno_stage_angle(n);
  Netlist out{width, default_mode_count(spec, mode_count), {}};
  out.elements.reserve(2 + 2 * static_cast<std::size_t>(n));
  out.elements.push_back(Hologram{spec.src, -spec.m});
  for (int i = 0; i < n; ++i) {
    if (order == ReintegrationOrder::kRepeat) {
      out.elements.push_back(BeamSplitter{spec.dst, spec.src, theta});
      out.elements.push_back(Filter{spec.dst, 0});
    } else {
      out.elements.push_back(Filter{spec.dst, 0});
      out.elements.push_back(BeamSplitter{spec.dst, spec.src, theta});
    }
  }
  out.elements.push_back(Hologram{spec.src, spec.m});
  return out;
}

PhotonState zeno_extract(const PhotonState& state,
                         const ExtractionSpec& spec) {
  if (!spec.stages) return ideal_extract(state, spec);
  validate_spec(spec);
  if (std::norm(state.amplitude(spec.dst, 0)) > kNormTolerance) {
    std::ostringstream msg;
    msg << "destination mode " << spec.dst << " already holds OAM 0";
    throw ValidationError(msg.str());
  }
  const int modes = std::max(state.max_mode() + 1, 1);
  return run_netlist(state,
                     lower_extract_to_netlist(spec, modes, state.width()));
}

PhotonState zeno_reintegrate(const PhotonState& state,
                             const ExtractionSpec& spec,
                             ReintegrationOrder order) {
  if (!spec.stages) return ideal_reintegrate(state, spec);
  validate_spec(spec);
  if (std::norm(state.amplitude(spec.src, spec.m)) > kNormTolerance) {
    std::ostringstream msg;
    msg << "source mode " << spec.src << " already holds OAM " << spec.m;
    throw ValidationError(msg.str());
  }
  const int modes = std::max(state.max_mode() + 1, 1);
  return run_netlist(
      state, lower_reintegrate_to_netlist(spec, order, modes, state.width()));
}

PhotonState analytic_extract(const PhotonState& state,
                             const ExtractionSpec& spec) {
  if (!spec.stages) return ideal_extract(state, spec);
  validate_spec(spec);
  return zeno_closed_form(state, spec, +1.0, false);
}

PhotonState analytic_reintegrate(const PhotonState& state,
                                 const ExtractionSpec& spec,
                                 ReintegrationOrder order) {
  if (!spec.stages) return ideal_reintegrate(state, spec);
  validate_spec(spec);
  return zeno_closed_form(state, spec, -1.0,
                          order == ReintegrationOrder::kReversedInverse);
}

double extraction_survival(const ExtractionSpec& spec,
                           std::span<const Amplitude> input_coeffs) {
  double kept = 0.0;
  double rest = 0.0;
  for (std::size_t ell = 0; ell < input_coeffs.size(); ++ell) {
    const double p = std::norm(input_coeffs[ell]);
    if (static_cast<OamIndex>(ell) == spec.m) {
      kept += p;
    } else {
      rest += p;
    }
  }
  if (!spec.stages) return kept + rest;
  return kept + rest * zeno_component_survival(*spec.stages);
}

std::vector<ZenoSweepRow> zeno_sweep(OamIndex m, OamIndex ell,
                                     std::span<const int> stage_counts) {
  if (m == ell) {
    throw ValidationError("sweep component must differ from the extracted m");
  }
  std::vector<ZenoSweepRow> rows;
  rows.reserve(stage_counts.size());
  const PhotonState input = basis_state(0, ell, 1);
  for (int n : stage_counts) {
    const ExtractionSpec spec{m, 0, 1, n};
    validate_spec(spec);
    rows.push_back(ZenoSweepRow{
        n, zeno_component_survival(n),
        survival_probability(zeno_extract(input, spec)),
        zeno_survival_estimate(n)});
  }
  return rows;
}

MonteCarloResult monte_carlo_run(const PhotonState& state,
                                 const Netlist& netlist, std::int64_t runs,
                                 std::uint64_t seed) {
  if (runs < 0) throw ValidationError("run count must be non-negative");
  const Netlist expanded = expand_macros(netlist);
  validate(expanded);
  if (state.width() != expanded.width ||
      state.max_mode() >= expanded.mode_count) {
    throw ValidationError("state does not fit the netlist");
  }

  // Conditioned on survival so far the state evolves deterministically, so
  // the absorption probability of each filter can be computed once.
  std::vector<double> absorb_given_alive;
  AmplitudeMap amps = state.amplitudes();
  for (const Element& element : expanded.elements) {
    if (const auto* f = std::get_if<Filter>(&element)) {
      double before = 0.0;
      for (const auto& [key, amp] : amps) before += std::norm(amp);
      const double absorbed = detail::project(amps, f->mode, f->m);
      absorb_given_alive.push_back(before > 0.0 ? absorbed / before : 1.0);
    } else if (std::holds_alternative<ExtractGate>(element) ||
               std::holds_alternative<ReintegrateGate>(element)) {
      amps = apply_element(PhotonState(state.width(), std::move(amps)), element)
                 .amplitudes();
    } else {
      detail::apply_primitive(amps, element);
    }
  }

  MonteCarloResult result;
  result.runs = runs;
  result.absorbed_at.assign(absorb_given_alive.size(), 0);
  for (std::int64_t r = 0; r < runs; ++r) {
    Rng rng(Rng::derive(seed, static_cast<std::uint64_t>(r)));
    bool alive = true;
    for (std::size_t i = 0; i < absorb_given_alive.size(); ++i) {
      if (absorb_given_alive[i] > 0.0 &&
          rng.uniform() < absorb_given_alive[i]) {
        ++result.absorbed_at[i];
        alive = false;
        break;
      }
    }
    if (alive) ++result.survived;
  }
  return result;
}

}  // namespace oamqc
