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

#include "oamqc/readout.hpp"

#include <cmath>
#include <sstream>
#include <utility>
#include <vector>

#include "oamqc/error.hpp"

namespace oamqc {

namespace {

void check_width(int n) {
  if (n < 1 || n > 62) {
    std::ostringstream msg;
    msg << "register width must be in [1, 62], got " << n;
    throw ValidationError(msg.str());
  }
}

// Occupations of `mode`, rejecting anything that sits elsewhere. With
// `computational` the OAM index must also lie in [0, 2^n).
std::vector<std::pair<OamIndex, Amplitude>> mode_terms(const PhotonState& state,
                                                       ModeIndex mode,
                                                       bool computational) {
  std::vector<std::pair<OamIndex, Amplitude>> terms;
  std::vector<std::pair<int, std::int64_t>> offenders;
  for (const auto& [key, amp] : state.amplitudes()) {
    const bool in_range =
        !computational || (key.ell >= 0 && key.ell < state.dimension());
    if (key.mode == mode && in_range) {
      terms.emplace_back(key.ell, amp);
    } else if (std::abs(amp) > kLeakageTolerance) {
      offenders.emplace_back(key.mode, key.ell);
    }
  }
  if (!offenders.empty()) {
    std::ostringstream msg;
    msg << "amplitude outside the readout subspace at";
    for (const auto& [m, ell] : offenders) msg << " (" << m << ", " << ell << ")";
    throw LeakageError(msg.str(), std::move(offenders));
  }
  return terms;
}

}  // namespace

std::string to_bit_string(OamIndex ell, int n) {
  check_width(n);
  std::string bits(static_cast<std::size_t>(n), '0');
  for (int k = 0; k < n; ++k) {
    if ((ell >> k) & 1) bits[static_cast<std::size_t>(n - 1 - k)] = '1';
  }
  return bits;
}

OamIndex sample_full_measurement(const PhotonState& state, ModeIndex mode,
                                 Rng& rng) {
  const auto terms = mode_terms(state, mode, false);
  double total = 0.0;
  for (const auto& [ell, amp] : terms) total += std::norm(amp);
  if (total <= 0.0) {
    throw ValidationError("cannot measure a fully absorbed photon");
  }
  const double u = rng.uniform() * total;
  double cumulative = 0.0;
  OamIndex last = terms.front().first;
  for (const auto& [ell, amp] : terms) {
    const double p = std::norm(amp);
    if (p == 0.0) continue;
    cumulative += p;
    last = ell;
    if (u < cumulative) return ell;
  }
  return last;
}

OamIndex sample_full_measurement(const PhotonState& state, ModeIndex mode,
                                 std::uint64_t seed) {
  Rng rng(seed);
  return sample_full_measurement(state, mode, rng);
}

double bit_probability(const PhotonState& state, ModeIndex mode, int bit_k) {
  if (bit_k < 0 || bit_k >= state.width()) {
    std::ostringstream msg;
    msg << "bit index " << bit_k << " outside [0, " << state.width() << ")";
    throw ValidationError(msg.str());
  }
  double one = 0.0;
  double total = 0.0;
  for (const auto& [ell, amp] : mode_terms(state, mode, true)) {
    total += std::norm(amp);
    if ((ell >> bit_k) & 1) one += std::norm(amp);
  }
  if (total <= 0.0) {
    throw ValidationError("cannot measure a fully absorbed photon");
  }
  return one / total;
}

BitOutcome measure_bit(const PhotonState& state, ModeIndex mode, int bit_k,
                       Rng& rng) {
  const double p_one = bit_probability(state, mode, bit_k);
  const int bit = rng.uniform() < p_one ? 1 : 0;
  const double p = bit == 1 ? p_one : 1.0 - p_one;
  const double scale = 1.0 / std::sqrt(p * state.norm_squared());
  AmplitudeMap kept;
  for (const auto& [ell, amp] : mode_terms(state, mode, true)) {
    if (((ell >> bit_k) & 1) == bit) kept.emplace(ModeKey{mode, ell}, amp * scale);
  }
  return BitOutcome{bit, PhotonState(state.width(), std::move(kept))};
}

BitOutcome measure_bit(const PhotonState& state, ModeIndex mode, int bit_k,
                       std::uint64_t seed) {
  Rng rng(seed);
  return measure_bit(state, mode, bit_k, rng);
}

RepeatedRunResult repeated_run_readout(
    const std::function<PhotonState()>& state_factory, ModeIndex mode, int n,
    std::uint64_t seed, BitOrder order) {
  check_width(n);
  RepeatedRunResult result;
  result.bits.assign(static_cast<std::size_t>(n), '0');
  for (int run = 0; run < n; ++run) {
    const int k = order == BitOrder::kLsbFirst ? run : n - 1 - run;
    const PhotonState copy = state_factory();
    if (copy.width() != n) {
      throw ValidationError("factory state width does not match n");
    }
    Rng rng(Rng::derive(seed, static_cast<std::uint64_t>(run)));
    const BitOutcome outcome = measure_bit(copy, mode, k, rng);
    if (outcome.bit == 1) result.bits[static_cast<std::size_t>(n - 1 - k)] = '1';
  }
  result.cost = repeated_run_cost(n);
  return result;
}

DemuxResult demux(const PhotonState& state, ModeIndex mode) {
  DemuxResult result;
  result.path.n = state.width();
  for (const auto& [ell, amp] : mode_terms(state, mode, true)) {
    result.path.amplitudes.emplace(to_bit_string(ell, state.width()), amp);
  }
  result.cost = demux_cost(state.width());
  return result;
}

PhotonState remux(const PathQubitState& path, ModeIndex mode) {
  check_width(path.n);
  AmplitudeMap amps;
  for (const auto& [bits, amp] : path.amplitudes) {
    if (bits.size() != static_cast<std::size_t>(path.n) ||
        bits.find_first_not_of("01") != std::string::npos) {
      throw ValidationError("malformed path bit string '" + bits + "'");
    }
    amps.emplace(ModeKey{mode, static_cast<OamIndex>(std::stoull(bits, nullptr, 2))},
                 amp);
  }
  return PhotonState(path.n, std::move(amps));
}

ReadoutCost sorter_cost(int n) {
  check_width(n);
  return ReadoutCost{n, std::int64_t{1} << n, 1, 0};
}

ReadoutCost repeated_run_cost(int n) {
  check_width(n);
  return ReadoutCost{1, 2, n, 0};
}

ReadoutCost demux_cost(int n) {
  check_width(n);
  return ReadoutCost{n, 2 * std::int64_t{n}, 1, 2 * std::int64_t{n} - 1};
}

SorterPlan plan_sorter(int n, std::int64_t arm_budget) {
  SorterPlan plan;
  plan.cost = sorter_cost(n);
  plan.exceeds_budget = plan.cost.arms > arm_budget;
  return plan;
}

}  // namespace oamqc
