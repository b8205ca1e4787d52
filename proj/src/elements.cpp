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

#include "oamqc/elements.hpp"

#include <cmath>
#include <set>
#include <sstream>
#include <string>

#include "oamqc/error.hpp"
#include "oamqc/extraction.hpp"

namespace oamqc {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

// Removes and returns every entry of `mode`.
std::vector<std::pair<OamIndex, Amplitude>> take_mode(AmplitudeMap& amps,
                                                      ModeIndex mode) {
  std::vector<std::pair<OamIndex, Amplitude>> out;
  auto first = amps.lower_bound(ModeKey{mode, INT64_MIN});
  auto last = first;
  while (last != amps.end() && last->first.mode == mode) {
    out.emplace_back(last->first.ell, last->second);
    ++last;
  }
  amps.erase(first, last);
  return out;
}

void check_mode(ModeIndex mode, int mode_count, const char* what) {
  if (mode < 0 || mode >= mode_count) {
    std::ostringstream msg;
    msg << what << " references mode " << mode << " outside [0, "
        << mode_count << ")";
    throw ValidationError(msg.str());
  }
}

void check_finite(double value, const char* what) {
  if (!std::isfinite(value)) {
    throw ValidationError(std::string(what) + " parameter is not finite");
  }
}

}  // namespace

namespace detail {

void phase_shift(AmplitudeMap& amps, ModeIndex mode, double phi) {
  const Amplitude factor = std::polar(1.0, phi);
  for (auto it = amps.lower_bound(ModeKey{mode, INT64_MIN});
       it != amps.end() && it->first.mode == mode; ++it) {
    it->second *= factor;
  }
}

void shift_oam(AmplitudeMap& amps, ModeIndex mode, OamIndex k) {
  if (k == 0) return;
  for (auto& [ell, amp] : take_mode(amps, mode)) {
    amps.emplace(ModeKey{mode, ell + k}, amp);
  }
}

void rotate_modes(AmplitudeMap& amps, ModeIndex mode_a, ModeIndex mode_b,
                  double theta) {
  if (mode_a == mode_b) {
    throw ValidationError("beamsplitter needs two distinct modes");
  }
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  std::map<OamIndex, std::pair<Amplitude, Amplitude>> pairs;
  for (auto& [ell, amp] : take_mode(amps, mode_a)) pairs[ell].first = amp;
  for (auto& [ell, amp] : take_mode(amps, mode_b)) pairs[ell].second = amp;
  for (const auto& [ell, ab] : pairs) {
    const auto [a, b] = ab;
    const Amplitude out_a = a * c + b * s;
    const Amplitude out_b = -a * s + b * c;
    if (out_a != Amplitude{}) amps.emplace(ModeKey{mode_a, ell}, out_a);
    if (out_b != Amplitude{}) amps.emplace(ModeKey{mode_b, ell}, out_b);
  }
}

double project(AmplitudeMap& amps, ModeIndex mode, OamIndex m) {
  double absorbed = 0.0;
  auto it = amps.lower_bound(ModeKey{mode, INT64_MIN});
  while (it != amps.end() && it->first.mode == mode) {
    if (it->first.ell == m) {
      ++it;
    } else {
      absorbed += std::norm(it->second);
      it = amps.erase(it);
    }
  }
  return absorbed;
}

void reflect(AmplitudeMap& amps, ModeIndex mode) {
  for (auto& [ell, amp] : take_mode(amps, mode)) {
    amps.emplace(ModeKey{mode, -ell}, amp);
  }
}

void apply_primitive(AmplitudeMap& amps, const Element& element) {
  std::visit(
      Overloaded{
          [&](const PhaseShifter& e) { phase_shift(amps, e.mode, e.phi); },
          [&](const Hologram& e) { shift_oam(amps, e.mode, e.k); },
          [&](const BeamSplitter& e) {
            rotate_modes(amps, e.mode_a, e.mode_b, e.theta);
          },
          [&](const Filter& e) { project(amps, e.mode, e.m); },
          [&](const Mirror& e) { reflect(amps, e.mode); },
          [&](const ExtractGate&) {
            throw ValidationError("macro passed to apply_primitive");
          },
          [&](const ReintegrateGate&) {
            throw ValidationError("macro passed to apply_primitive");
          },
      },
      element);
}

}  // namespace detail

PhotonState apply_phase_shifter(const PhotonState& state, ModeIndex mode,
                                double phi) {
  AmplitudeMap amps = state.amplitudes();
  detail::phase_shift(amps, mode, phi);
  return PhotonState(state.width(), std::move(amps));
}

PhotonState apply_hologram(const PhotonState& state, ModeIndex mode,
                           OamIndex k) {
  AmplitudeMap amps = state.amplitudes();
  detail::shift_oam(amps, mode, k);
  return PhotonState(state.width(), std::move(amps));
}

PhotonState apply_beamsplitter(const PhotonState& state, ModeIndex mode_a,
                               ModeIndex mode_b, double theta) {
  AmplitudeMap amps = state.amplitudes();
  detail::rotate_modes(amps, mode_a, mode_b, theta);
  return PhotonState(state.width(), std::move(amps));
}

PhotonState apply_filter(const PhotonState& state, ModeIndex mode,
                         OamIndex m) {
  AmplitudeMap amps = state.amplitudes();
  detail::project(amps, mode, m);
  return PhotonState(state.width(), std::move(amps));
}

PhotonState apply_mirror(const PhotonState& state, ModeIndex mode) {
  AmplitudeMap amps = state.amplitudes();
  detail::reflect(amps, mode);
  return PhotonState(state.width(), std::move(amps));
}

std::vector<Element> filter_via_holograms(ModeIndex mode, OamIndex m) {
  return {Hologram{mode, -m}, Filter{mode, 0}, Hologram{mode, m}};
}

PhotonState apply_element(const PhotonState& state, const Element& element) {
  return std::visit(
      Overloaded{
          [&](const ExtractGate& e) { return zeno_extract(state, e.spec); },
          [&](const ReintegrateGate& e) {
            return zeno_reintegrate(state, e.spec, e.order);
          },
          [&](const auto&) {
            AmplitudeMap amps = state.amplitudes();
            detail::apply_primitive(amps, element);
            return PhotonState(state.width(), std::move(amps));
          },
      },
      element);
}

void validate(const Netlist& netlist) {
  if (netlist.width < 1) throw ValidationError("netlist width must be >= 1");
  if (netlist.mode_count < 1) {
    throw ValidationError("netlist needs at least one spatial mode");
  }
  const int s = netlist.mode_count;
  for (const Element& element : netlist.elements) {
    std::visit(
        Overloaded{
            [&](const PhaseShifter& e) {
              check_mode(e.mode, s, "phase shifter");
              check_finite(e.phi, "phase shifter");
            },
            [&](const Hologram& e) { check_mode(e.mode, s, "hologram"); },
            [&](const BeamSplitter& e) {
              check_mode(e.mode_a, s, "beamsplitter");
              check_mode(e.mode_b, s, "beamsplitter");
              check_finite(e.theta, "beamsplitter");
              if (e.mode_a == e.mode_b) {
                throw ValidationError("beamsplitter needs two distinct modes");
              }
            },
            [&](const Filter& e) { check_mode(e.mode, s, "filter"); },
            [&](const Mirror& e) { check_mode(e.mode, s, "mirror"); },
            [&](const ExtractGate& e) {
              validate_spec(e.spec);
              check_mode(e.spec.src, s, "extraction gate");
              check_mode(e.spec.dst, s, "extraction gate");
            },
            [&](const ReintegrateGate& e) {
              validate_spec(e.spec);
              check_mode(e.spec.src, s, "reintegration gate");
              check_mode(e.spec.dst, s, "reintegration gate");
            },
        },
        element);
  }
}

PhotonState run_netlist(const PhotonState& state, const Netlist& netlist) {
  if (state.width() != netlist.width) {
    std::ostringstream msg;
    msg << "state width " << state.width() << " does not match netlist width "
        << netlist.width;
    throw ValidationError(msg.str());
  }
  validate(netlist);
  if (state.max_mode() >= netlist.mode_count) {
    std::ostringstream msg;
    msg << "state occupies mode " << state.max_mode() << " but the netlist has "
        << netlist.mode_count << " modes";
    throw ValidationError(msg.str());
  }

  AmplitudeMap amps = state.amplitudes();
  for (const Element& element : netlist.elements) {
    if (std::holds_alternative<ExtractGate>(element) ||
        std::holds_alternative<ReintegrateGate>(element)) {
      PhotonState current(state.width(), std::move(amps));
      amps = apply_element(current, element).amplitudes();
    } else {
      detail::apply_primitive(amps, element);
    }
  }
  return PhotonState(state.width(), std::move(amps));
}

Netlist expand_macros(const Netlist& netlist) {
  Netlist out{netlist.width, netlist.mode_count, {}};
  auto splice = [&](const Netlist& sub) {
    out.elements.insert(out.elements.end(), sub.elements.begin(),
                        sub.elements.end());
  };
  for (const Element& element : netlist.elements) {
    if (const auto* e = std::get_if<ExtractGate>(&element);
        e != nullptr && e->spec.stages) {
      splice(lower_extract_to_netlist(e->spec, netlist.mode_count,
                                      netlist.width));
    } else if (const auto* r = std::get_if<ReintegrateGate>(&element);
               r != nullptr && r->spec.stages) {
      splice(lower_reintegrate_to_netlist(r->spec, r->order,
                                          netlist.mode_count, netlist.width));
    } else {
      out.elements.push_back(element);
    }
  }
  return out;
}

std::size_t primitive_count(const Netlist& netlist) {
  std::size_t count = 0;
  for (const Element& element : netlist.elements) {
    const ExtractionSpec* spec = nullptr;
    if (const auto* e = std::get_if<ExtractGate>(&element)) spec = &e->spec;
    if (const auto* r = std::get_if<ReintegrateGate>(&element)) spec = &r->spec;
    if (spec != nullptr && spec->stages) {
      // two holograms plus a beamsplitter and a filter per stage
      count += 2 + 2 * static_cast<std::size_t>(*spec->stages);
    } else {
      ++count;
    }
  }
  return count;
}

ReflectionParityReport check_reflection_parity(const Netlist& netlist) {
  ReflectionParityReport report;
  const int s = std::max(netlist.mode_count, 0);
  report.mirrors_per_mode.assign(static_cast<std::size_t>(s), 0);
  for (const Element& element : netlist.elements) {
    if (const auto* mirror = std::get_if<Mirror>(&element)) {
      if (mirror->mode >= 0 && mirror->mode < s) {
        ++report.mirrors_per_mode[static_cast<std::size_t>(mirror->mode)];
      }
      ++report.total_mirrors;
    }
  }
  for (int count : report.mirrors_per_mode) {
    report.mode_ok.push_back(count % 2 == 0);
    report.all_even = report.all_even && count % 2 == 0;
  }
  return report;
}

}  // namespace oamqc
