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

// Acceptance harness: one PASS/FAIL line per criterion, non-zero exit if any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "oamqc/cli.hpp"
#include "oamqc/compiler.hpp"
#include "oamqc/elements.hpp"
#include "oamqc/extraction.hpp"
#include "oamqc/json_io.hpp"
#include "oamqc/readout.hpp"
#include "test_support.hpp"

namespace {

using namespace oamqc;
using std::numbers::pi;
namespace fs = std::filesystem;

struct Check {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

// cos^{2N}(pi/2N), 30-digit reference values.
struct SurvivalRef {
  int n;
  double value;
};
constexpr SurvivalRef kSurvivalRefs[] = {
    {1, 0.0},
    {3, 0.421875},
    {10, 0.780546069781140169905},
    {100, 0.975626914143900280917},
    {1000, 0.997535639419570211223},
};

Check zeno_survival_law() {
  Check c;
  for (const auto& ref : kSurvivalRefs) {
    const ExtractionSpec spec{0, 0, 1, ref.n};
    const Netlist net = lower_extract_to_netlist(spec, 2, 2);
    for (OamIndex ell = 1; ell < 4; ++ell) {
      const double p = survival_probability(run_netlist(basis_state(0, ell, 2), net));
      c.require(std::abs(p - ref.value) < 1e-12,
                "N=" + std::to_string(ref.n) + " survival " + fmt(p));
      if (ref.n >= 10) {
        c.require(p >= 1.0 - pi * pi / (4.0 * ref.n),
                  "N=" + std::to_string(ref.n) + " below 1 - pi^2/4N");
      }
    }
  }
  return c;
}

Check rotation_composition() {
  Check c;
  for (int n : {1, 2, 3, 7, 10, 100, 1000, 10000}) {
    // Track both columns of the 2x2 transfer matrix.
    PhotonState a = basis_state(0, 0, 1);
    PhotonState b = basis_state(1, 0, 1);
    const double theta = pi / (2.0 * n);
    for (int i = 0; i < n; ++i) {
      a = apply_beamsplitter(a, 0, 1, theta);
      b = apply_beamsplitter(b, 0, 1, theta);
    }
    const PhotonState a_ref = apply_beamsplitter(basis_state(0, 0, 1), 0, 1, pi / 2);
    const PhotonState b_ref = apply_beamsplitter(basis_state(1, 0, 1), 0, 1, pi / 2);
    const double err = std::max(distance(a, a_ref), distance(b, b_ref));
    c.require(err < 1e-12, "N=" + std::to_string(n) + " error " + fmt(err));
    c.require(std::abs(std::abs(a.amplitude(1, 0)) - 1.0) < 1e-12,
              "N=" + std::to_string(n) + " incomplete transfer");
  }
  return c;
}

// E_m written out directly: the |m> term becomes |0> of the destination.
PhotonState extraction_oracle(const std::vector<Amplitude>& coeffs, OamIndex m) {
  AmplitudeMap amps;
  for (OamIndex ell = 0; ell < static_cast<OamIndex>(coeffs.size()); ++ell) {
    if (coeffs[ell] == Amplitude(0.0)) continue;
    if (ell == m) {
      amps.emplace(ModeKey{1, 0}, coeffs[ell]);
    } else {
      amps.emplace(ModeKey{0, ell}, coeffs[ell]);
    }
  }
  return PhotonState(2, std::move(amps));
}

Check extraction_semantics() {
  Check c;
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto coeffs = testing::random_coefficients(4, 3000 + seed);
    const PhotonState s = from_amplitudes(0, coeffs, 2);
    const OamIndex m = static_cast<OamIndex>(seed % 4);
    const PhotonState ideal = ideal_extract(s, ExtractionSpec{m, 0, 1, kIdeal});
    c.require(ideal == extraction_oracle(coeffs, m),
              "ideal_extract differs from the oracle, seed " + std::to_string(seed));
    const PhotonState zeno = zeno_extract(s, ExtractionSpec{m, 0, 1, 1000});
    const double err = distance(zeno.normalized(), ideal);
    worst = std::max(worst, err);
  }
  c.require(worst < 5e-3, "worst renormalized error " + fmt(worst));
  return c;
}

Check reversibility() {
  Check c;
  double worst_ideal = 0.0;
  double worst_zeno = 0.0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto coeffs = testing::random_coefficients(4, 4000 + seed);
    const PhotonState s = from_amplitudes(0, coeffs, 2);
    const OamIndex m = static_cast<OamIndex>(seed % 4);
    const ExtractionSpec ideal{m, 0, 1, kIdeal};
    worst_ideal = std::max(
        worst_ideal, distance(ideal_reintegrate(ideal_extract(s, ideal), ideal), s));
    const ExtractionSpec zeno{m, 0, 1, 1000};
    const PhotonState back = zeno_reintegrate(zeno_extract(s, zeno), zeno);
    worst_zeno = std::max(worst_zeno, distance(back.normalized(), s));
  }
  c.require(worst_ideal < 1e-12, "ideal round trip " + fmt(worst_ideal));
  c.require(worst_zeno < 1e-2, "N=1000 round trip " + fmt(worst_zeno));
  return c;
}

Check universality_round_trip() {
  Check c;
  for (Eigen::Index d : {2, 4, 8}) {
    const int width = width_for_dimension(d);
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      const ComplexMatrix u = testing::haar_unitary(d, 6000 + 100 * d + seed);
      const CompileResult r = compile_unitary(u, kIdeal);
      const double residual = reconstruct_and_verify(r.netlist, u);
      c.require(residual < 1e-9, "d=" + std::to_string(d) + " residual " + fmt(residual));
      c.require(r.factors.size() <= static_cast<std::size_t>(d * (d - 1) / 2 + d),
                "d=" + std::to_string(d) + " too many factors");
      for (const TwoLevelFactor& f : r.factors) {
        const Netlist net{width, 3, lower_two_level(f, ModePlan{}, kIdeal)};
        for (OamIndex ell = 0; ell < d; ++ell) {
          if (ell == f.m || ell == f.n) continue;
          const PhotonState out = run_netlist(basis_state(0, ell, width), net);
          c.require(std::abs(out.amplitude(0, ell) - 1.0) < 1e-12 &&
                        std::abs(out.norm_squared() - 1.0) < 1e-12,
                    "untouched component moved");
        }
      }
    }
  }
  return c;
}

Check survival_accounting() {
  Check c;
  const ComplexMatrix u = testing::haar_unitary(4, 2000);
  const CompileResult r = compile_unitary(u, 2000);
  const double gap = std::abs(r.report.simulated_survival - r.report.analytic_survival);
  c.require(gap < 1e-9, "basis-averaged survival gap " + fmt(gap));
  const PhotonState psi = from_amplitudes(0, testing::random_coefficients(4, 2001), 2);
  const double sim = survival_probability(run_netlist(psi, r.netlist));
  const double ana = survival_probability(analytic_run(psi, r.netlist));
  c.require(std::abs(sim - ana) < 1e-9, "random-input survival gap " + fmt(sim - ana));
  c.require(r.report.verification_residual < 1e-2,
            "renormalized residual " + fmt(r.report.verification_residual));
  return c;
}

Check readout_costs() {
  Check c;
  for (int n = 1; n <= 16; ++n) {
    const ReadoutCost s = sorter_cost(n);
    c.require(s.arms == (std::int64_t{1} << n) && s.decision_points == n,
              "sorter cost at n=" + std::to_string(n));
    c.require(demux_cost(n).cnot_count == 2 * n - 1,
              "demux cost at n=" + std::to_string(n));
  }
  for (int n = 1; n <= 10; ++n) {
    for (OamIndex ell = 0; ell < (OamIndex{1} << n); ++ell) {
      const auto r = repeated_run_readout([&] { return basis_state(0, ell, n); }, 0, n,
                                          static_cast<std::uint64_t>(ell));
      c.require(r.bits == to_bit_string(ell, n) && r.cost.runs == n,
                "repeated run at n=" + std::to_string(n) + ", l=" + std::to_string(ell));
    }
  }
  return c;
}

Check born_rule() {
  Check c;
  const double h = 1.0 / std::sqrt(2.0);
  const PhotonState psi(2, {{ModeKey{0, 0}, h}, {ModeKey{0, 3}, h}});
  Rng rng(8);
  const int samples = 10000;
  int zeros = 0;
  int others = 0;
  for (int i = 0; i < samples; ++i) {
    const OamIndex ell = sample_full_measurement(psi, 0, rng);
    if (ell == 0) {
      ++zeros;
    } else if (ell != 3) {
      ++others;
    }
  }
  const double sigma = std::sqrt(samples * 0.5 * 0.5);
  c.require(others == 0, "sampled an outcome with zero amplitude");
  c.require(std::abs(zeros - samples * 0.5) < 4 * sigma,
            "|0> count " + std::to_string(zeros) + " outside 4 sigma");
  return c;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Check determinism() {
  Check c;
  const fs::path dir = fs::temp_directory_path() / "oamqc_acceptance_determinism";
  fs::remove_all(dir);
  fs::create_directories(dir);
  auto p = [&](const char* name) { return (dir / name).string(); };

  io::write_text_atomic(p("u.json"), io::dump(io::unitary_to_json(testing::haar_unitary(4, 9))));
  io::write_text_atomic(
      p("psi.json"),
      io::dump(io::state_to_json(from_amplitudes(0, testing::random_coefficients(4, 9), 2))));

  auto invoke = [&](std::vector<std::string> args) {
    args.insert(args.begin(), "oamqc");
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(args, out, err);
    return std::make_pair(code, out.str());
  };
  c.require(invoke({"compile", "--input", p("u.json"), "--spec-n", "50", "--output",
                    p("net.json")})
                    .first == 0,
            "setup compile failed");

  const std::vector<std::vector<std::string>> runs = {
      {"compile", "--input", p("u.json"), "--spec-n", "50", "--output", p("a.out")},
      {"compile", "--input", p("u.json"), "--output", p("a.out")},
      {"simulate", "--netlist", p("net.json"), "--input", p("psi.json"), "--seed", "7",
       "--monte-carlo", "2000", "--output", p("a.out")},
      {"verify", "--netlist", p("net.json"), "--input", p("u.json"), "--output", p("a.out"),
       "--tolerance", "1e-2"},
      {"zeno-sweep", "--m", "2", "--output", p("a.out")},
      {"readout", "--input", p("psi.json"), "--strategy", "repeat", "--seed", "3",
       "--output", p("a.out")},
      {"readout", "--input", p("psi.json"), "--strategy", "sorter", "--seed", "3",
       "--output", p("a.out")},
      {"readout", "--input", p("psi.json"), "--strategy", "demux", "--output", p("a.out")},
  };
  for (const auto& args : runs) {
    const auto first = invoke(args);
    const std::string first_file = slurp(p("a.out"));
    const auto second = invoke(args);
    const std::string second_file = slurp(p("a.out"));
    c.require(first.first == second.first && first.second == second.second &&
                  first_file == second_file && !first_file.empty(),
              args[0] + " output differs between identical runs");
  }
  fs::remove_all(dir);
  return c;
}

struct Criterion {
  int id;
  const char* name;
  double budget_seconds;
  std::function<Check()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "zeno survival law", 1.0, zeno_survival_law},
      {2, "rotation composition", 1.0, rotation_composition},
      {3, "extraction semantics", 5.0, extraction_semantics},
      {4, "reversibility", 5.0, reversibility},
      {5, "universality round trip", 60.0, universality_round_trip},
      {6, "survival accounting", 30.0, survival_accounting},
      {7, "readout costs", 1.0, readout_costs},
      {8, "born-rule sampling", 5.0, born_rule},
      {9, "determinism", 60.0, determinism},
  };
  int failures = 0;
  for (const Criterion& crit : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Check check;
    try {
      check = crit.run();
    } catch (const std::exception& e) {
      check.ok = false;
      check.detail = std::string("exception: ") + e.what();
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (check.ok && elapsed > crit.budget_seconds) {
      check.ok = false;
      check.detail = "took " + fmt(elapsed) + " s";
    }
    std::printf("%s criterion %d (%s) %.3fs%s%s\n", check.ok ? "PASS" : "FAIL", crit.id,
                crit.name, elapsed, check.ok ? "" : ": ", check.detail.c_str());
    if (!check.ok) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
