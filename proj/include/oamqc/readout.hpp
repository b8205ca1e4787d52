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
#include <functional>
#include <map>
#include <string>

#include "oamqc/random.hpp"
#include "oamqc/state.hpp"

namespace oamqc {

/// Resources needed by one readout strategy.
///
/// sorter: one photon through n binary decisions of a 2^n-arm tree.
/// repeated run: n runs, each with a single binary decision.
/// demux: one run, 2n - 1 path CNOTs, then n path qubits on 2n output paths.
struct ReadoutCost {
  std::int64_t decision_points = 0;
  std::int64_t arms = 0;
  std::int64_t runs = 0;
  std::int64_t cnot_count = 0;

  bool operator==(const ReadoutCost&) const = default;
};

enum class BitOrder { kLsbFirst, kMsbFirst };

/// Path-encoded register: bit string b_{n-1} ... b_0 -> amplitude.
struct PathQubitState {
  int n = 0;
  std::map<std::string, Amplitude> amplitudes;
};

inline constexpr std::int64_t kDefaultArmBudget = 256;

struct SorterPlan {
  ReadoutCost cost;
  bool exceeds_budget = false;
};

/// b_{n-1} ... b_0 of ell.
std::string to_bit_string(OamIndex ell, int n);

/// Samples ell with probability |alpha_ell|^2 / sum |alpha|^2. Rejects states
/// with amplitude outside `mode` and fully absorbed states.
OamIndex sample_full_measurement(const PhotonState& state, ModeIndex mode,
                                 Rng& rng);
OamIndex sample_full_measurement(const PhotonState& state, ModeIndex mode,
                                 std::uint64_t seed);

struct BitOutcome {
  int bit = 0;
  PhotonState collapsed;
};

/// Projective measurement of bit `bit_k` of ell. The collapsed state keeps
/// only matching amplitudes and is renormalized.
BitOutcome measure_bit(const PhotonState& state, ModeIndex mode, int bit_k,
                       Rng& rng);
BitOutcome measure_bit(const PhotonState& state, ModeIndex mode, int bit_k,
                       std::uint64_t seed);

/// Probability that bit `bit_k` reads 1 (renormalized over survival).
double bit_probability(const PhotonState& state, ModeIndex mode, int bit_k);

struct RepeatedRunResult {
  std::string bits;  // b_{n-1} ... b_0
  ReadoutCost cost;
};

/// One fresh copy per bit; run k uses Rng(Rng::derive(seed, k)). The bits
/// are only meaningful when every copy is (close to) the same basis state.
RepeatedRunResult repeated_run_readout(
    const std::function<PhotonState()>& state_factory, ModeIndex mode, int n,
    std::uint64_t seed, BitOrder order = BitOrder::kLsbFirst);

struct DemuxResult {
  PathQubitState path;
  ReadoutCost cost;
};

/// Relabels OAM ell of `mode` as the path register |b_{n-1} ... b_0>.
/// Throws LeakageError listing every occupation outside (mode, [0, 2^n)).
DemuxResult demux(const PhotonState& state, ModeIndex mode);

/// Inverse relabeling back onto OAM states of `mode`.
PhotonState remux(const PathQubitState& path, ModeIndex mode);

ReadoutCost sorter_cost(int n);
ReadoutCost repeated_run_cost(int n);
ReadoutCost demux_cost(int n);

SorterPlan plan_sorter(int n, std::int64_t arm_budget = kDefaultArmBudget);

}  // namespace oamqc
