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

#include <complex>
#include <compare>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

namespace oamqc {

/// Spatial mode index in [0, S).
using ModeIndex = int;
/// OAM quantum number ell (units of hbar). Any integer; the computational
/// basis of an n-qubit register is 0 <= ell < 2^n.
using OamIndex = std::int64_t;
using Amplitude = std::complex<double>;

/// Tolerance on norm checks (probability units).
inline constexpr double kNormTolerance = 1e-12;
/// Amplitude magnitude above which stray occupations count as leakage.
inline constexpr double kLeakageTolerance = 1e-9;

/// One single-photon occupation: the photon is in spatial mode `mode` carrying
/// OAM `ell`. Vacuum in a mode is the absence of any key for it.
struct ModeKey {
  ModeIndex mode = 0;
  OamIndex ell = 0;

  auto operator<=>(const ModeKey&) const = default;
};

using AmplitudeMap = std::map<ModeKey, Amplitude>;

/// Unnormalized single-photon state over (spatial mode, OAM) occupations.
///
/// The squared norm is the probability that the photon has not yet been
/// absorbed by a filter; it never exceeds 1 + kNormTolerance. Values are
/// immutable: every element application produces a new state.
class PhotonState {
 public:
  /// Throws ValidationError on width < 1, width > 62 or norm^2 > 1 + eps.
  PhotonState(int width, AmplitudeMap amplitudes);

  int width() const { return width_; }
  /// 2^width.
  std::int64_t dimension() const { return std::int64_t{1} << width_; }

  const AmplitudeMap& amplitudes() const { return amplitudes_; }
  Amplitude amplitude(ModeIndex mode, OamIndex ell) const;

  /// Dense coefficients alpha_0 .. alpha_{2^n - 1} of one spatial mode.
  std::vector<Amplitude> coefficients(ModeIndex mode) const;

  /// Sum of |amplitude|^2.
  double norm_squared() const;

  /// Largest mode index that carries amplitude, or -1 when empty.
  ModeIndex max_mode() const;

  /// Same state scaled to unit norm. Throws on an empty state.
  PhotonState normalized() const;

  bool operator==(const PhotonState&) const = default;

 private:
  int width_;
  AmplitudeMap amplitudes_;
};

PhotonState basis_state(ModeIndex mode, OamIndex ell, int width);

/// Places coeffs[ell] at (mode, ell). coeffs must have exactly 2^width entries.
PhotonState from_amplitudes(ModeIndex mode, std::span<const Amplitude> coeffs,
                            int width);

double survival_probability(const PhotonState& state);

/// <a|b>. Throws ValidationError on mismatched widths.
Amplitude overlap(const PhotonState& a, const PhotonState& b);

/// Euclidean distance between two amplitude maps (missing keys read as 0).
double distance(const PhotonState& a, const PhotonState& b);

}  // namespace oamqc
