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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <numeric>

#include "oamqc/error.hpp"
#include "test_support.hpp"

namespace oamqc {
namespace {

using std::numbers::pi;

// cos^{2N}(pi/2N) frozen from a 30-digit evaluation.
constexpr double kSurvivalN3 = 0.421875;  // (sqrt(3)/2)^6 = 27/64
constexpr double kSurvivalN10 = 0.780546069781140169905;
constexpr double kSurvivalN100 = 0.975626914143900280917;
constexpr double kSurvivalN1000 = 0.997535639419570211223;

// Survival by repeated multiplication, independent of std::pow.
double survival_by_product(int n) {
  const double c = std::cos(pi / (2.0 * n));
  double p = 1.0;
  for (int i = 0; i < 2 * n; ++i) p *= c;
  return p;
}

TEST(ZenoFormula, FrozenValues) {
  EXPECT_NEAR(zeno_component_survival(3), kSurvivalN3, 1e-15);
  EXPECT_NEAR(zeno_component_survival(10), kSurvivalN10, 1e-15);
  EXPECT_NEAR(zeno_component_survival(100), kSurvivalN100, 1e-14);
  EXPECT_NEAR(zeno_component_survival(1000), kSurvivalN1000, 1e-13);
  EXPECT_NEAR(zeno_component_survival(1), 0.0, 1e-30);
  for (int n : {1, 2, 5, 17, 250, 999}) {
    EXPECT_NEAR(zeno_component_survival(n), survival_by_product(n), 1e-13);
  }
  EXPECT_NEAR(zeno_survival_estimate(100), 0.975325988997276603, 1e-15);
}

TEST(IdealExtract, MovesTargetToDestination) {
  const ExtractionSpec spec{3, 0, 1, kIdeal};
  EXPECT_EQ(ideal_extract(basis_state(0, 3, 2), spec), basis_state(1, 0, 2));
  EXPECT_EQ(ideal_extract(basis_state(0, 1, 2), spec), basis_state(0, 1, 2));
}

TEST(IdealExtract, SplitsSuperposition) {
  const Amplitude a0(0.6, 0.0);
  const Amplitude a1(0.0, 0.8);
  const PhotonState s(1, {{ModeKey{0, 0}, a0}, {ModeKey{0, 1}, a1}});
  const PhotonState out = ideal_extract(s, ExtractionSpec{1, 0, 1, kIdeal});
  EXPECT_EQ(out, PhotonState(1, {{ModeKey{0, 0}, a0}, {ModeKey{1, 0}, a1}}));
}

TEST(IdealExtract, RejectsOccupiedDestination) {
  const PhotonState s(2, {{ModeKey{0, 2}, 0.6}, {ModeKey{1, 0}, 0.8}});
  EXPECT_THROW(ideal_extract(s, ExtractionSpec{2, 0, 1, kIdeal}), ValidationError);
  EXPECT_THROW(ideal_extract(s, ExtractionSpec{2, 1, 1, kIdeal}), ValidationError);
}

TEST(IdealReintegrate, InvertsExtraction) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto coeffs = testing::random_coefficients(8, seed);
    const PhotonState s = from_amplitudes(0, coeffs, 3);
    const ExtractionSpec spec{static_cast<OamIndex>(seed % 8), 0, 2, kIdeal};
    EXPECT_LT(distance(ideal_reintegrate(ideal_extract(s, spec), spec), s), 1e-12);
  }
  EXPECT_EQ(ideal_reintegrate(basis_state(1, 0, 3), ExtractionSpec{5, 0, 1, kIdeal}),
            basis_state(0, 5, 3));
  EXPECT_EQ(ideal_reintegrate(basis_state(0, 2, 3), ExtractionSpec{5, 0, 1, kIdeal}),
            basis_state(0, 2, 3));
  EXPECT_THROW(
      ideal_reintegrate(PhotonState(3, {{ModeKey{0, 5}, 0.6}, {ModeKey{1, 0}, 0.8}}),
                        ExtractionSpec{5, 0, 1, kIdeal}),
      ValidationError);
}

TEST(LowerExtract, SingleStage) {
  const Netlist net = lower_extract_to_netlist(ExtractionSpec{0, 0, 1, 1});
  ASSERT_EQ(net.elements.size(), 4u);
  EXPECT_EQ(net.elements[0], Element(Hologram{0, 0}));
  const auto& bs = std::get<BeamSplitter>(net.elements[1]);
  EXPECT_DOUBLE_EQ(bs.theta, pi / 2);
  EXPECT_EQ(net.elements[2], Element(Filter{1, 0}));
  EXPECT_EQ(net.elements[3], Element(Hologram{0, 0}));
  const PhotonState out = run_netlist(basis_state(0, 0, 1), net);
  EXPECT_NEAR(survival_probability(out), 1.0, 1e-15);
  EXPECT_NEAR(std::abs(out.amplitude(1, 0) - 1.0), 0.0, 1e-15);
}

TEST(LowerExtract, ThreeStages) {
  const Netlist net = lower_extract_to_netlist(ExtractionSpec{2, 0, 1, 3});
  int splitters = 0;
  int filters = 0;
  for (const Element& e : net.elements) {
    if (const auto* bs = std::get_if<BeamSplitter>(&e)) {
      ++splitters;
      EXPECT_DOUBLE_EQ(bs->theta, pi / 6);
    }
    if (std::holds_alternative<Filter>(e)) ++filters;
  }
  EXPECT_EQ(splitters, 3);
  EXPECT_EQ(filters, 3);
  EXPECT_EQ(net.elements.front(), Element(Hologram{0, -2}));
  EXPECT_EQ(net.elements.back(), Element(Hologram{0, 2}));
}

TEST(LowerExtract, RejectsIdealAndBadStages) {
  EXPECT_THROW(lower_extract_to_netlist(ExtractionSpec{0, 0, 1, kIdeal}),
               ValidationError);
  EXPECT_THROW(lower_extract_to_netlist(ExtractionSpec{0, 0, 1, 0}), ValidationError);
  EXPECT_THROW(lower_extract_to_netlist(ExtractionSpec{0, 1, 1, 3}), ValidationError);
}

TEST(ZenoExtract, HundredStagesSurvival) {
  const PhotonState out = zeno_extract(basis_state(0, 1, 1), ExtractionSpec{0, 0, 1, 100});
  EXPECT_NEAR(survival_probability(out), kSurvivalN100, 1e-12);
  EXPECT_NEAR(survival_probability(out), 0.975625, 2e-6);
}

TEST(ZenoExtract, TargetCrossesLosslessly) {
  for (int n : {1, 2, 3, 10, 100, 1000}) {
    const ExtractionSpec spec{3, 0, 1, n};
    const PhotonState out = zeno_extract(basis_state(0, 3, 2), spec);
    EXPECT_LT(distance(out, basis_state(1, 0, 2)), 1e-12) << "N=" << n;
    EXPECT_LT(distance(out, ideal_extract(basis_state(0, 3, 2), spec)), 1e-12);
  }
}

TEST(ZenoExtract, ThreeStageSurvivalIs27Over64) {
  const PhotonState out = zeno_extract(basis_state(0, 2, 2), ExtractionSpec{0, 0, 1, 3});
  EXPECT_NEAR(survival_probability(out), 27.0 / 64.0, 1e-15);
}

TEST(ZenoExtract, AmplitudeDeviationBound) {
  for (int n : {10, 100, 1000}) {
    const auto coeffs = testing::random_coefficients(4, 77 + n);
    const PhotonState s = from_amplitudes(0, coeffs, 2);
    const ExtractionSpec spec{1, 0, 1, n};
    const PhotonState zeno = zeno_extract(s, spec);
    const PhotonState ideal = ideal_extract(s, spec);
    double worst = 0.0;
    for (const auto& [key, amp] : ideal.amplitudes()) {
      if (std::abs(amp) == 0.0) continue;
      worst = std::max(worst, std::abs(zeno.amplitude(key.mode, key.ell) - amp) /
                                  std::abs(amp));
    }
    EXPECT_LE(worst, pi * pi / (8.0 * n) + 1.0 / (double(n) * n)) << "N=" << n;
  }
}

TEST(ZenoExtract, SimulatedMatchesClosedForm) {
  for (int n : {1, 2, 3, 7, 50, 400}) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      // Arbitrary content in both modes, including dst.
      const PhotonState s = testing::random_state(3, 3, -2, 5, seed * 31 + n);
      const ExtractionSpec spec{static_cast<OamIndex>(seed % 4), 0, 1, n};
      EXPECT_LT(distance(run_netlist(s, lower_extract_to_netlist(spec, 3, 3)),
                         analytic_extract(s, spec)),
                1e-12);
      for (auto order : {ReintegrationOrder::kRepeat, ReintegrationOrder::kReversedInverse}) {
        EXPECT_LT(distance(run_netlist(s, lower_reintegrate_to_netlist(spec, order, 3, 3)),
                           analytic_reintegrate(s, spec, order)),
                  1e-12);
      }
    }
  }
}

TEST(ZenoExtract, SurvivalMatchesFormulaForEveryInput) {
  for (int n : {1, 3, 10, 100, 1000}) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const auto coeffs = testing::random_coefficients(4, seed + 10 * n);
      const ExtractionSpec spec{static_cast<OamIndex>(seed % 4), 0, 1, n};
      const PhotonState out = zeno_extract(from_amplitudes(0, coeffs, 2), spec);
      EXPECT_NEAR(survival_probability(out), extraction_survival(spec, coeffs), 1e-12);
    }
  }
}

TEST(ExtractionSurvival, Examples) {
  const std::vector<Amplitude> on_target = {0.0, 1.0};
  EXPECT_DOUBLE_EQ(extraction_survival(ExtractionSpec{1, 0, 1, 100}, on_target), 1.0);

  const std::vector<Amplitude> off_target = {1.0, 0.0};
  const double p = extraction_survival(ExtractionSpec{1, 0, 1, 100}, off_target);
  EXPECT_NEAR(p, kSurvivalN100, 1e-14);
  EXPECT_GT(p, zeno_survival_estimate(100));
  // Second-order gap is (pi^2/4N)^2 / 2.
  EXPECT_NEAR(p - zeno_survival_estimate(100), std::pow(pi * pi / 400.0, 2) / 2, 1e-5);

  const double h = 1.0 / std::sqrt(2.0);
  const std::vector<Amplitude> split = {h, h};
  EXPECT_NEAR(extraction_survival(ExtractionSpec{0, 0, 1, 3}, split), 0.7109375, 1e-15);
  const PhotonState sim = zeno_extract(from_amplitudes(0, split, 1), ExtractionSpec{0, 0, 1, 3});
  EXPECT_NEAR(survival_probability(sim), 0.7109375, 1e-14);
}

TEST(ZenoProperties, SurvivalIncreasesWithStages) {
  double previous = zeno_component_survival(1);
  for (int n = 2; n <= 2000; ++n) {
    const double current = zeno_component_survival(n);
    EXPECT_GE(current, previous) << "N=" << n;
    previous = current;
  }
}

TEST(ZenoProperties, RenormalizedErrorDecaysAsOneOverN) {
  const auto coeffs = testing::random_coefficients(4, 2024);
  const PhotonState s = from_amplitudes(0, coeffs, 2);
  std::vector<double> xs;
  std::vector<double> ys;
  for (int n : {10, 20, 50, 100, 200, 500, 1000}) {
    const ExtractionSpec spec{2, 0, 1, n};
    const double err =
        distance(zeno_extract(s, spec).normalized(), ideal_extract(s, spec));
    xs.push_back(std::log(static_cast<double>(n)));
    ys.push_back(std::log(err));
  }
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / xs.size();
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / ys.size();
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  const double slope = sxy / sxx;
  EXPECT_NEAR(slope, -1.0, 0.1);
}

TEST(ZenoProperties, ReintegrationAfterExtraction) {
  const int n = 1000;
  const double factor = zeno_amplitude_factor(n);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto coeffs = testing::random_coefficients(4, 900 + seed);
    const PhotonState s = from_amplitudes(0, coeffs, 2);
    const ExtractionSpec spec{static_cast<OamIndex>(seed % 4), 0, 1, n};
    const PhotonState back = zeno_reintegrate(zeno_extract(s, spec), spec);
    // Exact on the extracted component, uniform cos^{2N} on the rest.
    for (OamIndex ell = 0; ell < 4; ++ell) {
      const Amplitude expected =
          ell == spec.m ? coeffs[ell] : coeffs[ell] * factor * factor;
      EXPECT_NEAR(std::abs(back.amplitude(0, ell) - expected), 0.0, 1e-9);
    }
    EXPECT_NEAR(survival_probability(back.normalized()), 1.0, 1e-12);
    EXPECT_LT(distance(back.normalized(), s), 1e-2);
    EXPECT_LT(std::abs(back.amplitude(1, 0)), 1e-12);
  }
}

TEST(ZenoProperties, ReversedInverseLeavesSmallLeak) {
  const int n = 1000;
  const auto coeffs = testing::random_coefficients(4, 4242);
  const PhotonState s = from_amplitudes(0, coeffs, 2);
  const ExtractionSpec spec{1, 0, 1, n};
  const PhotonState back = zeno_reintegrate(zeno_extract(s, spec), spec,
                                            ReintegrationOrder::kReversedInverse);
  // Register content agrees with the repeat ordering.
  const PhotonState repeat = zeno_reintegrate(zeno_extract(s, spec), spec);
  for (OamIndex ell = 0; ell < 4; ++ell) {
    EXPECT_NEAR(std::abs(back.amplitude(0, ell) - repeat.amplitude(0, ell)), 0.0, 1e-12);
  }
  double leak = 0.0;
  for (const auto& [key, amp] : back.amplitudes()) {
    if (key.mode == 1) leak += std::norm(amp);
  }
  EXPECT_GT(leak, 0.0);
  EXPECT_LT(leak, std::pow(std::sin(zeno_stage_angle(n)), 2));
}

TEST(ZenoSweep, RowsMatchFormula) {
  const std::vector<int> ns = {1, 3, 10, 100};
  const auto rows = zeno_sweep(0, 1, ns);
  ASSERT_EQ(rows.size(), ns.size());
  EXPECT_NEAR(rows[0].simulated_survival, 0.0, 1e-30);
  EXPECT_NEAR(rows[1].simulated_survival, 0.421875, 1e-15);
  for (const auto& row : rows) {
    EXPECT_NEAR(row.simulated_survival, row.analytic_survival, 1e-12);
  }
  EXPECT_THROW(zeno_sweep(2, 2, ns), ValidationError);
}

TEST(MonteCarlo, SurvivalFractionTracksAnalytic) {
  const auto coeffs = testing::random_coefficients(4, 5);
  const PhotonState s = from_amplitudes(0, coeffs, 2);
  const ExtractionSpec spec{0, 0, 1, 3};
  const Netlist net = lower_extract_to_netlist(spec, 2, 2);
  const auto result = monte_carlo_run(s, net, 20000, 99);
  const double p = extraction_survival(spec, coeffs);
  const double sigma = std::sqrt(p * (1 - p) / 20000.0);
  EXPECT_NEAR(result.survival_fraction(), p, 4 * sigma);
  EXPECT_EQ(result.absorbed_at.size(), 3u);

  const auto again = monte_carlo_run(s, net, 20000, 99);
  EXPECT_EQ(again.survived, result.survived);
  EXPECT_EQ(again.absorbed_at, result.absorbed_at);
}

}  // namespace
}  // namespace oamqc
