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

#include <Eigen/Dense>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "oamqc/elements.hpp"
#include "oamqc/state.hpp"

namespace oamqc {

using ComplexMatrix = Eigen::MatrixXcd;
using Matrix2c = Eigen::Matrix2cd;

inline constexpr double kUnitaryTolerance = 1e-9;
inline constexpr double kFactorUnitaryTolerance = 1e-10;
/// Residual above which an IDEAL compilation is treated as an internal bug.
inline constexpr double kCompileGuard = 1e-6;

/// ||U^dagger U - I||_F.
double unitarity_residual(const ComplexMatrix& u);

/// Number of qubits n with 2^n == d. Throws ValidationError otherwise.
int width_for_dimension(Eigen::Index d);

/// Two-level unitary acting on levels m and n as
///   alpha_m -> u(0,0) alpha_m + u(0,1) alpha_n
///   alpha_n -> u(1,0) alpha_m + u(1,1) alpha_n
/// and as the identity elsewhere.
struct TwoLevelFactor {
  OamIndex m = 0;
  OamIndex n = 1;
  Matrix2c u = Matrix2c::Identity();
};

/// Factors F_1 .. F_k with U = F_k ... F_1 (F_1 is applied first). Each is a
/// Givens-type two-level unitary from column-by-column elimination; the final
/// diagonal phase is merged into the factor on levels (d-2, d-1) or emitted as
/// a degenerate factor diag(e^{i phi}, 1). Throws ValidationError when U is
/// not unitary to kUnitaryTolerance.
std::vector<TwoLevelFactor> decompose_two_level(const ComplexMatrix& u);

/// Full d x d embedding of a factor.
ComplexMatrix embed_factor(const TwoLevelFactor& factor, Eigen::Index d);

/// F_k ... F_1 from embedded factors.
ComplexMatrix multiply_factors(std::span<const TwoLevelFactor> factors,
                               Eigen::Index d);

/// Beamsplitter and phase settings realizing a 2x2 unitary:
///   u = e^{i delta} diag(e^{i phi_pre}, 1) R(theta) diag(e^{i phi_post}, 1)
/// with R(theta) = [[cos, sin], [-sin, cos]], theta in [0, pi/2].
struct U2Params {
  double theta = 0.0;
  double phi_pre = 0.0;
  double phi_post = 0.0;
  double delta = 0.0;
};

U2Params u2_to_optics(const Matrix2c& u);
Matrix2c optics_to_u2(const U2Params& params);

/// Spatial modes used by the two-level lowering: the register mode and two
/// auxiliary modes that receive the extracted levels.
struct ModePlan {
  ModeIndex src = 0;
  ModeIndex aux_m = 1;
  ModeIndex aux_n = 2;
};

/// Elements realizing one two-level factor: extract m then n, the 2x2
/// optics on the auxiliary pair, then reintegrate n then m. Phase shifters
/// and beamsplitters with a zero parameter are omitted.
std::vector<Element> lower_two_level(const TwoLevelFactor& factor,
                                     const ModePlan& plan, Stages stages);

/// Effective d x d map of `netlist` on the computational subspace of mode 0.
/// In IDEAL mode throws LeakageError if any output amplitude lands outside
/// (mode 0, [0, d)) beyond kLeakageTolerance. With finite stages each column
/// is renormalized (conditional map given survival).
ComplexMatrix effective_matrix(const Netlist& netlist);

/// ||U_eff - U||_F.
double reconstruct_and_verify(const Netlist& netlist, const ComplexMatrix& u);

/// Runs the netlist replacing every finite-stage macro by its closed form.
PhotonState analytic_run(const PhotonState& state, const Netlist& netlist);

struct CompileReport {
  std::size_t factor_count = 0;
  std::size_t element_count = 0;
  Stages stages = kIdeal;
  /// Analytic survival (closed-form gate product); 1.0 for IDEAL.
  double analytic_survival = 1.0;
  /// Simulated survival of the same input through the element netlist.
  double simulated_survival = 1.0;
  double verification_residual = 0.0;
};

struct CompileResult {
  Netlist netlist;
  std::vector<TwoLevelFactor> factors;
  CompileReport report;
};

/// Decomposes, lowers and verifies. Survival fields refer to `input` when
/// given, and otherwise to the average over the computational basis inputs.
/// Throws OamError when an IDEAL compilation verifies worse than
/// kCompileGuard.
CompileResult compile_unitary(const ComplexMatrix& u, Stages stages,
                              const std::optional<PhotonState>& input = {});

}  // namespace oamqc
