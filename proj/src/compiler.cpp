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

#include "oamqc/compiler.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "oamqc/error.hpp"
#include "oamqc/extraction.hpp"

namespace oamqc {

namespace {

// Entries below this magnitude are treated as already eliminated.
constexpr double kEliminationTolerance = 1e-14;
// Below this |u_mm| the beamsplitter is taken as fully crossing.
constexpr double kCrossingTolerance = 1e-13;

double wrap_angle(double x) {
  double r = std::remainder(x, 2.0 * std::numbers::pi);
  return r == -std::numbers::pi ? std::numbers::pi : r;
}

double matrix2_residual(const Matrix2c& u) {
  return (u.adjoint() * u - Matrix2c::Identity()).norm();
}

bool is_lossless(const Netlist& netlist) {
  for (const Element& element : netlist.elements) {
    if (std::holds_alternative<Filter>(element)) return false;
    if (const auto* e = std::get_if<ExtractGate>(&element);
        e != nullptr && e->spec.stages) {
      return false;
    }
    if (const auto* r = std::get_if<ReintegrateGate>(&element);
        r != nullptr && r->spec.stages) {
      return false;
    }
  }
  return true;
}

std::vector<PhotonState> simulate_columns(const Netlist& netlist) {
  const std::int64_t d = std::int64_t{1} << netlist.width;
  std::vector<PhotonState> columns;
  columns.reserve(static_cast<std::size_t>(d));
  for (std::int64_t ell = 0; ell < d; ++ell) {
    columns.push_back(
        run_netlist(basis_state(0, ell, netlist.width), netlist));
  }
  return columns;
}

ComplexMatrix assemble(const std::vector<PhotonState>& columns, int width,
                       bool lossless) {
  const Eigen::Index d = Eigen::Index{1} << width;
  ComplexMatrix out = ComplexMatrix::Zero(d, d);
  std::vector<std::pair<int, std::int64_t>> leaks;
  for (Eigen::Index col = 0; col < d; ++col) {
    const PhotonState& state = columns[static_cast<std::size_t>(col)];
    const double survival = state.norm_squared();
    const double scale =
        lossless || survival <= 0.0 ? 1.0 : 1.0 / std::sqrt(survival);
    for (const auto& [key, amp] : state.amplitudes()) {
      if (key.mode == 0 && key.ell >= 0 && key.ell < d) {
        out(key.ell, col) = amp * scale;
      } else if (lossless && std::abs(amp) > kLeakageTolerance) {
        leaks.emplace_back(key.mode, key.ell);
      }
    }
  }
  if (!leaks.empty()) {
    std::ostringstream msg;
    msg << "netlist leaks amplitude outside the computational subspace at";
    for (const auto& [mode, ell] : leaks) {
      msg << " (" << mode << ", " << ell << ")";
    }
    throw LeakageError(msg.str(), std::move(leaks));
  }
  return out;
}

}  // namespace

double unitarity_residual(const ComplexMatrix& u) {
  if (u.rows() != u.cols()) return std::numeric_limits<double>::infinity();
  return (u.adjoint() * u - ComplexMatrix::Identity(u.rows(), u.cols())).norm();
}

int width_for_dimension(Eigen::Index d) {
  if (d < 2 || (d & (d - 1)) != 0) {
    std::ostringstream msg;
    msg << "dimension " << d << " is not a power of two >= 2";
    throw ValidationError(msg.str());
  }
  int width = 0;
  while ((Eigen::Index{1} << width) < d) ++width;
  return width;
}

std::vector<TwoLevelFactor> decompose_two_level(const ComplexMatrix& u) {
  if (u.rows() != u.cols()) {
    throw ValidationError("target matrix is not square");
  }
  width_for_dimension(u.rows());
  const double residual = unitarity_residual(u);
  if (!(residual <= kUnitaryTolerance)) {
    std::ostringstream msg;
    msg.precision(3);
    msg << "target matrix is not unitary: ||U^dagger U - I||_F = "
        << std::scientific << residual;
    throw ValidationError(msg.str());
  }

  const Eigen::Index d = u.rows();
  ComplexMatrix w = u;
  // Eliminations G_1 .. G_k with G_k ... G_1 U = diag(1, ..., 1, e^{i phi}).
  std::vector<TwoLevelFactor> eliminations;
  for (Eigen::Index c = 0; c + 1 < d; ++c) {
    for (Eigen::Index r = d - 1; r > c; --r) {
      const Amplitude a = w(c, c);
      const Amplitude b = w(r, c);
      const bool last_in_column = r == c + 1;
      if (std::abs(b) <= kEliminationTolerance &&
          (!last_in_column || std::abs(a - 1.0) <= kEliminationTolerance)) {
        w(r, c) = 0.0;
        continue;
      }
      const double rho = std::hypot(std::abs(a), std::abs(b));
      Matrix2c g;
      g << std::conj(a) / rho, std::conj(b) / rho, -b / rho, a / rho;
      const Eigen::RowVectorXcd row_c = w.row(c);
      const Eigen::RowVectorXcd row_r = w.row(r);
      w.row(c) = g(0, 0) * row_c + g(0, 1) * row_r;
      w.row(r) = g(1, 0) * row_c + g(1, 1) * row_r;
      w(c, c) = rho;
      w(r, c) = 0.0;
      eliminations.push_back(TwoLevelFactor{c, r, g});
    }
  }

  // U = G_1^dagger ... G_k^dagger W, so W acts first and G_1^dagger last.
  std::vector<TwoLevelFactor> factors;
  factors.reserve(eliminations.size() + 1);
  const OamIndex hi = d - 1;
  const OamIndex lo = d - 2;
  Matrix2c tail;
  tail << w(lo, lo), w(lo, hi), w(hi, lo), w(hi, hi);
  const bool merge = !eliminations.empty() && eliminations.back().m == lo &&
                     eliminations.back().n == hi;
  if (merge) {
    TwoLevelFactor last = eliminations.back();
    eliminations.pop_back();
    factors.push_back(TwoLevelFactor{lo, hi, last.u.adjoint() * tail});
  } else if (std::abs(w(hi, hi) - 1.0) > kEliminationTolerance) {
    Matrix2c phase = Matrix2c::Identity();
    phase(0, 0) = w(hi, hi) / std::abs(w(hi, hi));
    factors.push_back(TwoLevelFactor{hi, lo, phase});
  }
  for (auto it = eliminations.rbegin(); it != eliminations.rend(); ++it) {
    factors.push_back(TwoLevelFactor{it->m, it->n, it->u.adjoint()});
  }
  return factors;
}

ComplexMatrix embed_factor(const TwoLevelFactor& factor, Eigen::Index d) {
  if (factor.m < 0 || factor.n < 0 || factor.m >= d || factor.n >= d ||
      factor.m == factor.n) {
    std::ostringstream msg;
    msg << "factor levels (" << factor.m << ", " << factor.n
        << ") invalid for dimension " << d;
    throw ValidationError(msg.str());
  }
  ComplexMatrix out = ComplexMatrix::Identity(d, d);
  const auto m = static_cast<Eigen::Index>(factor.m);
  const auto n = static_cast<Eigen::Index>(factor.n);
  out(m, m) = factor.u(0, 0);
  out(m, n) = factor.u(0, 1);
  out(n, m) = factor.u(1, 0);
  out(n, n) = factor.u(1, 1);
  return out;
}

ComplexMatrix multiply_factors(std::span<const TwoLevelFactor> factors,
                               Eigen::Index d) {
  ComplexMatrix out = ComplexMatrix::Identity(d, d);
  for (const TwoLevelFactor& factor : factors) {
    out = embed_factor(factor, d) * out;
  }
  return out;
}

U2Params u2_to_optics(const Matrix2c& u) {
  const double residual = matrix2_residual(u);
  if (!(residual <= kFactorUnitaryTolerance)) {
    std::ostringstream msg;
    msg.precision(3);
    msg << "2x2 block is not unitary: residual " << std::scientific
        << residual;
    throw ValidationError(msg.str());
  }
  // u = e^{i delta} [[e^{i(pre+post)} c, e^{i pre} s], [-e^{i post} s, c]]
  U2Params p;
  p.theta = std::atan2(std::abs(u(0, 1)), std::abs(u(0, 0)));
  if (std::abs(u(0, 0)) < kCrossingTolerance) {
    p.theta = std::numbers::pi / 2;
    p.phi_pre = 0.0;
    p.delta = std::arg(u(0, 1));
    p.phi_post = wrap_angle(std::arg(-u(1, 0)) - p.delta);
  } else if (std::abs(u(0, 1)) == 0.0) {
    p.theta = 0.0;
    p.delta = std::arg(u(1, 1));
    p.phi_pre = 0.0;
    p.phi_post = wrap_angle(std::arg(u(0, 0)) - p.delta);
  } else {
    p.delta = std::arg(u(1, 1));
    p.phi_pre = wrap_angle(std::arg(u(0, 1)) - p.delta);
    p.phi_post = wrap_angle(std::arg(-u(1, 0)) - p.delta);
  }
  return p;
}

Matrix2c optics_to_u2(const U2Params& params) {
  const double c = std::cos(params.theta);
  const double s = std::sin(params.theta);
  Matrix2c rotation;
  rotation << c, s, -s, c;
  Matrix2c pre = Matrix2c::Identity();
  pre(0, 0) = std::polar(1.0, params.phi_pre);
  Matrix2c post = Matrix2c::Identity();
  post(0, 0) = std::polar(1.0, params.phi_post);
  return std::polar(1.0, params.delta) * pre * rotation * post;
}

std::vector<Element> lower_two_level(const TwoLevelFactor& factor,
                                     const ModePlan& plan, Stages stages) {
  if (plan.src == plan.aux_m || plan.src == plan.aux_n ||
      plan.aux_m == plan.aux_n) {
    throw ValidationError("two-level lowering needs three distinct modes");
  }
  if (factor.m == factor.n) {
    throw ValidationError("two-level factor needs distinct levels");
  }
  const U2Params p = u2_to_optics(factor.u);
  const ExtractionSpec spec_m{factor.m, plan.src, plan.aux_m, stages};
  const ExtractionSpec spec_n{factor.n, plan.src, plan.aux_n, stages};
  validate_spec(spec_m);
  validate_spec(spec_n);

  std::vector<Element> out;
  out.push_back(ExtractGate{spec_m});
  out.push_back(ExtractGate{spec_n});
  if (p.phi_post != 0.0) out.push_back(PhaseShifter{plan.aux_m, p.phi_post});
  if (p.theta != 0.0) {
    out.push_back(BeamSplitter{plan.aux_m, plan.aux_n, p.theta});
  }
  if (p.phi_pre != 0.0) out.push_back(PhaseShifter{plan.aux_m, p.phi_pre});
  if (p.delta != 0.0) {
    out.push_back(PhaseShifter{plan.aux_m, p.delta});
    out.push_back(PhaseShifter{plan.aux_n, p.delta});
  }
  out.push_back(ReintegrateGate{spec_n, ReintegrationOrder::kRepeat});
  out.push_back(ReintegrateGate{spec_m, ReintegrationOrder::kRepeat});
  return out;
}

ComplexMatrix effective_matrix(const Netlist& netlist) {
  return assemble(simulate_columns(netlist), netlist.width,
                  is_lossless(netlist));
}

double reconstruct_and_verify(const Netlist& netlist, const ComplexMatrix& u) {
  const Eigen::Index d = Eigen::Index{1} << netlist.width;
  if (u.rows() != d || u.cols() != d) {
    throw ValidationError("target dimension does not match netlist width");
  }
  return (effective_matrix(netlist) - u).norm();
}

PhotonState analytic_run(const PhotonState& state, const Netlist& netlist) {
  if (state.width() != netlist.width) {
    throw ValidationError("state width does not match netlist width");
  }
  validate(netlist);
  PhotonState current = state;
  for (const Element& element : netlist.elements) {
    if (const auto* e = std::get_if<ExtractGate>(&element)) {
      current = analytic_extract(current, e->spec);
    } else if (const auto* r = std::get_if<ReintegrateGate>(&element)) {
      current = analytic_reintegrate(current, r->spec, r->order);
    } else {
      current = apply_element(current, element);
    }
  }
  return current;
}

CompileResult compile_unitary(const ComplexMatrix& u, Stages stages,
                              const std::optional<PhotonState>& input) {
  if (stages && *stages < 1) {
    throw ValidationError("Zeno stage count must be >= 1");
  }
  const int width = width_for_dimension(u.rows());
  CompileResult result;
  result.factors = decompose_two_level(u);

  const ModePlan plan;
  auto build = [&](Stages s) {
    Netlist netlist{width, 3, {}};
    for (const TwoLevelFactor& factor : result.factors) {
      auto lowered = lower_two_level(factor, plan, s);
      netlist.elements.insert(netlist.elements.end(), lowered.begin(),
                              lowered.end());
    }
    return netlist;
  };

  const Netlist ideal = build(kIdeal);
  const double ideal_residual = reconstruct_and_verify(ideal, u);
  if (!(ideal_residual <= kCompileGuard)) {
    std::ostringstream msg;
    msg << "internal error: compiled netlist misses the target by "
        << ideal_residual;
    throw OamError(msg.str());
  }

  result.netlist = stages ? build(stages) : ideal;
  CompileReport& report = result.report;
  report.factor_count = result.factors.size();
  report.element_count = primitive_count(result.netlist);
  report.stages = stages;
  if (!stages) {
    report.verification_residual = ideal_residual;
    if (input) {
      report.analytic_survival = input->norm_squared();
      report.simulated_survival =
          run_netlist(*input, result.netlist).norm_squared();
    }
    return result;
  }

  const std::vector<PhotonState> columns = simulate_columns(result.netlist);
  report.verification_residual =
      (assemble(columns, width, false) - u).norm();
  if (input) {
    report.analytic_survival =
        analytic_run(*input, result.netlist).norm_squared();
    report.simulated_survival =
        run_netlist(*input, result.netlist).norm_squared();
  } else {
    const auto d = static_cast<double>(columns.size());
    double analytic = 0.0;
    double simulated = 0.0;
    for (std::size_t ell = 0; ell < columns.size(); ++ell) {
      analytic += analytic_run(basis_state(0, static_cast<OamIndex>(ell), width),
                               result.netlist)
                      .norm_squared();
      simulated += columns[ell].norm_squared();
    }
    report.analytic_survival = analytic / d;
    report.simulated_survival = simulated / d;
  }
  return result;
}

}  // namespace oamqc
