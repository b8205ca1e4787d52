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

#include "oamqc/state.hpp"

#include <cmath>
#include <sstream>

#include "oamqc/error.hpp"

namespace oamqc {

namespace {

constexpr int kMaxWidth = 62;

double sum_norm(const AmplitudeMap& amplitudes) {
  double total = 0.0;
  for (const auto& [key, amp] : amplitudes) total += std::norm(amp);
  return total;
}

}  // namespace

PhotonState::PhotonState(int width, AmplitudeMap amplitudes)
    : width_(width), amplitudes_(std::move(amplitudes)) {
  if (width_ < 1 || width_ > kMaxWidth) {
    std::ostringstream msg;
    msg << "qubit width must be in [1, " << kMaxWidth << "], got " << width_;
    throw ValidationError(msg.str());
  }
  const double n2 = sum_norm(amplitudes_);
  if (!std::isfinite(n2) || n2 > 1.0 + kNormTolerance) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "state norm^2 " << n2 << " exceeds 1";
    throw ValidationError(msg.str());
  }
}

Amplitude PhotonState::amplitude(ModeIndex mode, OamIndex ell) const {
  auto it = amplitudes_.find(ModeKey{mode, ell});
  return it == amplitudes_.end() ? Amplitude{} : it->second;
}

std::vector<Amplitude> PhotonState::coefficients(ModeIndex mode) const {
  std::vector<Amplitude> out(static_cast<std::size_t>(dimension()));
  for (auto it = amplitudes_.lower_bound(ModeKey{mode, 0});
       it != amplitudes_.end() && it->first.mode == mode; ++it) {
    if (it->first.ell >= dimension()) break;
    out[static_cast<std::size_t>(it->first.ell)] = it->second;
  }
  return out;
}

double PhotonState::norm_squared() const { return sum_norm(amplitudes_); }

ModeIndex PhotonState::max_mode() const {
  return amplitudes_.empty() ? -1 : amplitudes_.rbegin()->first.mode;
}

PhotonState PhotonState::normalized() const {
  const double n2 = norm_squared();
  if (n2 <= 0.0) throw ValidationError("cannot normalize an absorbed state");
  const double scale = 1.0 / std::sqrt(n2);
  AmplitudeMap out;
  for (const auto& [key, amp] : amplitudes_) out.emplace(key, amp * scale);
  return PhotonState(width_, std::move(out));
}

PhotonState basis_state(ModeIndex mode, OamIndex ell, int width) {
  if (mode < 0) throw ValidationError("mode index must be non-negative");
  return PhotonState(width, AmplitudeMap{{ModeKey{mode, ell}, Amplitude{1.0}}});
}

PhotonState from_amplitudes(ModeIndex mode, std::span<const Amplitude> coeffs,
                            int width) {
  if (width < 1 || width > kMaxWidth) {
    throw ValidationError("qubit width out of range");
  }
  if (mode < 0) throw ValidationError("mode index must be non-negative");
  const std::size_t expected = std::size_t{1} << width;
  if (coeffs.size() != expected) {
    std::ostringstream msg;
    msg << "expected " << expected << " coefficients for width " << width
        << ", got " << coeffs.size();
    throw ValidationError(msg.str());
  }
  AmplitudeMap amps;
  for (std::size_t ell = 0; ell < coeffs.size(); ++ell) {
    if (coeffs[ell] != Amplitude{}) {
      amps.emplace(ModeKey{mode, static_cast<OamIndex>(ell)}, coeffs[ell]);
    }
  }
  return PhotonState(width, std::move(amps));
}

double survival_probability(const PhotonState& state) {
  return state.norm_squared();
}

Amplitude overlap(const PhotonState& a, const PhotonState& b) {
  if (a.width() != b.width()) {
    throw ValidationError("overlap of states with different widths");
  }
  Amplitude total{};
  const auto& bm = b.amplitudes();
  for (const auto& [key, amp] : a.amplitudes()) {
    auto it = bm.find(key);
    if (it != bm.end()) total += std::conj(amp) * it->second;
  }
  return total;
}

double distance(const PhotonState& a, const PhotonState& b) {
  double total = 0.0;
  const auto& am = a.amplitudes();
  const auto& bm = b.amplitudes();
  for (const auto& [key, amp] : am) {
    auto it = bm.find(key);
    total += std::norm(amp - (it == bm.end() ? Amplitude{} : it->second));
  }
  for (const auto& [key, amp] : bm) {
    if (!am.contains(key)) total += std::norm(amp);
  }
  return std::sqrt(total);
}

}  // namespace oamqc
