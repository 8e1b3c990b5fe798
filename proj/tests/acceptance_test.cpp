// Copyright 2026 The corrspace Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Acceptance suite: one test per criterion, each printing a single
// "[criterion N] PASS|FAIL ..." line.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "corrspace/analysis.hpp"
#include "corrspace/cli.hpp"
#include "corrspace/measurement.hpp"
#include "corrspace/prep.hpp"
#include "corrspace/protocols.hpp"
#include "corrspace/random.hpp"
#include "corrspace/tomography.hpp"
#include "corrspace/wires.hpp"

namespace corrspace {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void report(int criterion, bool ok, const std::string& detail) {
  std::printf("[criterion %d] %s %s\n", criterion, ok ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  EXPECT_TRUE(ok) << "criterion " << criterion << ": " << detail;
}

std::string num(double x, int digits = 3) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

Vec2 ket(cplx a, cplx b) {
  Vec2 v;
  v << a, b;
  return v;
}

// Four-qubit wire written out term by term from its closed form.
StateVector psi4_closed_form(double theta) {
  const double c = std::cos(theta), s = std::sin(theta);
  const Vec2 h = kets::h(), v = kets::v(), p = kets::p(), m = kets::m();
  const VecX first = kron(kron(VecX(c * h), VecX(c * h + s * v)), VecX(c * kron(VecX(h), VecX(p)) + s * kron(VecX(v), VecX(m))));
  const VecX second = kron(kron(VecX(s * v), VecX(c * h - s * v)), VecX(c * kron(VecX(h), VecX(m)) + s * kron(VecX(v), VecX(p))));
  return StateVector({"1", "2", "3", "4"}, first + second);
}

double p_s_formula(double alpha, double theta) {
  const double s2 = std::pow(std::sin(2 * theta), 2);
  return s2 / (2 * (1 - std::cos(2 * theta) * std::cos(alpha)));
}

double wrong_angle_formula(double alpha, double theta) {
  const double sh = std::sin(alpha / 2);
  if (std::abs(sh) < 1e-15) return kPi;
  return 2 * std::atan(-std::pow(std::tan(theta), 2) * std::cos(alpha / 2) / sh);
}

TEST(Acceptance, Criterion01StateIdentities) {
  const auto t0 = Clock::now();
  const double th = kPi / 6;
  const double wire = overlap_modulus(contract_wire(psi4_wire(th)).state, psi4_closed_form(th));
  const double six = overlap_modulus(contract_resource(psi6_resource(th)).state, psi6_literal(th).state);
  const double elapsed = seconds_since(t0);
  const bool ok = std::abs(wire - 1) < 1e-12 && std::abs(six - 1) < 1e-12 && elapsed < 1.0;
  report(1, ok, "psi4 overlap-1=" + num(wire - 1) + " psi6 operational/literal overlap-1=" + num(six - 1) +
                    " time=" + num(elapsed) + "s");
}

TEST(Acceptance, Criterion02Correlations) {
  const StateVector psi4 = build_psi4(kPi / 6);
  const StateVector psi6 = build_psi6(kPi / 6);
  const double xx13 = two_point_correlation(psi4, "1", "3", 'X', 'X');
  const double xz24 = two_point_correlation(psi6, "2", "4", 'X', 'Z');
  const double zx34 = two_point_correlation(psi6, "3", "4", 'Z', 'X');
  const double cluster = q_max(build_psi4(kPi / 4), "1", "3");
  const bool ok = std::abs(xx13 - 0.375) < 1e-12 && std::abs(xz24 - std::sqrt(3.0) / 4) < 1e-12 &&
                  std::abs(xz24 - 0.43301) < 1e-5 && std::abs(zx34 - 0.375) < 1e-12 && std::abs(cluster) < 1e-12;
  report(2, ok, "Q_XX13=" + num(xx13, 15) + " Q_XZ24=" + num(xz24, 15) + " Q_ZX34=" + num(zx34, 15) +
                    " cluster qmax13=" + num(cluster));
}

TEST(Acceptance, Criterion03Entropies) {
  const auto e4 = local_entropies(build_psi4(kPi / 6));
  const StateVector psi6 = build_psi6(kPi / 6);
  const auto e6 = local_entropies(psi6);
  auto at6 = [&](const char* q) { return e6[static_cast<std::size_t>(psi6.position(q))]; };
  bool ok = std::abs(e4[0] - 0.75) < 1e-12 && std::abs(e4[1] - 0.5625) < 1e-12 && std::abs(e4[2] - 0.75) < 1e-12;
  ok = ok && std::abs(at6("1") - 0.75) < 1e-12 && std::abs(at6("2") - 0.75) < 1e-12 &&
       std::abs(at6("3") - 0.75) < 1e-12 && std::abs(at6("4") - 0.9375) < 1e-12;
  report(3, ok, "psi4 (" + num(e4[0], 12) + ", " + num(e4[1], 12) + ", " + num(e4[2], 12) + ") psi6 (" +
                    num(at6("1"), 12) + ", " + num(at6("2"), 12) + ", " + num(at6("3"), 12) + ", " +
                    num(at6("4"), 12) + ")");
}

struct RotationRow {
  const char* name;
  double alpha, beta, gamma;
  Vec2 logical;   // in the correlation-space basis |0>, |1>
  Vec2 physical;  // in H, V
};

TEST(Acceptance, Criterion04RotationTables) {
  const double r3 = std::sqrt(3.0) / 2;
  const Vec2 zero = kets::h(), one = kets::v(), plus = kets::p(), minus = kets::m();
  const Vec2 i0 = kets::r(), i1 = kets::l();
  // Correlation space |0>,|1> maps to the physical |P>,|M>.
  auto phys = [](const Vec2& c) -> Vec2 { return c(0) * kets::p() + c(1) * kets::m(); };
  const std::vector<RotationRow> rows = {
      {"main row 1", 0, 0, 0, zero, kets::p()},
      {"main row 2", kPi, kPi, 0, one, kets::m()},
      {"main row 3", kPi / 2, kPi / 2, kPi / 2, plus, kets::h()},
      {"main row 4", -kPi / 2, kPi / 2, kPi / 2, minus, kets::v()},
      {"main row 5", kPi, kPi, kPi / 2, i0, kets::l()},
      {"main row 6", kPi, kPi, -kPi / 2, i1, kets::r()},
      {"extended row 1", kPi, 0, kPi / 3, ket(0.5, kI * r3), phys(ket(0.5, kI * r3))},
      {"extended row 2", 0, 0, -kPi / 3, ket(r3, kI * 0.5), phys(ket(r3, kI * 0.5))},
      {"extended row 3", kPi / 2, 2 * kPi / 3, kPi / 2, ket(r3, 0.5), phys(ket(r3, 0.5))},
      {"extended row 4", kPi / 2, kPi / 3, kPi / 2, ket(0.5, r3), phys(ket(0.5, r3))},
      {"extended row 5", kPi / 2, 2 * kPi / 3, 0, Vec2(0.5 * minus - kI * r3 * plus), Vec2(0.5 * one - kI * r3 * zero)},
      {"extended row 6", kPi / 2, kPi / 3, 0, Vec2(r3 * minus - kI * 0.5 * plus), Vec2(r3 * one - kI * 0.5 * zero)},
  };
  int passed = 0;
  std::string failures;
  for (const auto& row : rows) {
    const auto t = rotate_sequence(row.alpha, row.beta, row.gamma, OutcomeSource::zeros());
    const double ol = overlap_modulus(t.logical_out, VecX(row.logical));
    const double op = overlap_modulus(t.physical_out.amps(), VecX(row.physical));
    if (std::abs(ol - 1) < 1e-9 && std::abs(op - 1) < 1e-9) {
      ++passed;
    } else {
      failures += std::string(" [") + row.name + ": logical overlap " + num(ol, 6) + ", physical overlap " + num(op, 6) + "]";
    }
  }
  report(4, passed == static_cast<int>(rows.size()), std::to_string(passed) + "/12 rows" + failures);
}

TEST(Acceptance, Criterion05SuccessProbabilities) {
  const double th = kPi / 6;
  const StateVector psi4 = build_psi4(th);
  double worst_born = 0.0, worst_comp = 0.0;
  for (int k = 0; k < 100; ++k) {
    const double alpha = -kPi + 2 * kPi * (k + 0.5) / 100;
    const double born = outcome_probabilities(psi4, "1", basis_B(alpha, th))[0];
    const double ps = p_s_formula(alpha, th);
    worst_born = std::max(worst_born, std::abs(born - ps));
    const double expected = ps + (1 - ps) * p_s_formula(alpha - wrong_angle_formula(alpha, th), th);
    worst_comp = std::max(worst_comp, std::abs(compensate_exhaustive(alpha, CompensationResource::FourQubit, th).success_probability - expected));
  }
  // Seeded sampling of the full adaptive protocol.
  const int shots = 100000;
  double worst_z = 0.0;
  for (double alpha : {kPi / 3, kPi / 2, 2.0}) {
    int hits = 0;
    for (int i = 0; i < shots; ++i) {
      hits += compensate(alpha, CompensationResource::FourQubit, OutcomeSource::sample(derive_seed(2024, static_cast<std::uint64_t>(i))), th).success;
    }
    const double p = compensation_success_formula(alpha, CompensationResource::FourQubit, th);
    const double sigma = std::sqrt(p * (1 - p) / shots);
    worst_z = std::max(worst_z, std::abs(hits / static_cast<double>(shots) - p) / sigma);
  }
  const bool ok = worst_born < 1e-12 && worst_comp < 1e-12 && worst_z < 4.0;
  report(5, ok, "max|Born-p_s|=" + num(worst_born) + " max|compensation-formula|=" + num(worst_comp) +
                    " sampling max z=" + num(worst_z));
}

TEST(Acceptance, Criterion06NoisyCurves) {
  const double th = kPi / 6;
  const auto t0 = Clock::now();
  std::vector<double> grid;
  for (int k = 0; k <= 60; ++k) grid.push_back(2 * kPi * k / 60);
  const auto two = noisy_success_curve(grid, CompensationResource::TwoQubit, 0.90, th);
  const auto four = noisy_success_curve(grid, CompensationResource::FourQubit, 0.73, th);
  const auto two_pure = noisy_success_curve(grid, CompensationResource::TwoQubit, 1.0, th);
  const auto four_pure = noisy_success_curve(grid, CompensationResource::FourQubit, 1.0, th);
  const double elapsed = seconds_since(t0);
  // White noise mixes the pure curve with the maximally mixed value: outcome 0
  // on one qubit (1/2) for two qubits, 1/2 + 1/4 for the four-qubit program.
  const double w2 = (4 * 0.90 - 1) / 3, w4 = (16 * 0.73 - 1) / 15;
  double worst_mix = 0.0, worst_end = 0.0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double a = grid[k];
    const double p2 = p_s_formula(a, th);
    const double p4 = p2 + (1 - p2) * p_s_formula(a - wrong_angle_formula(a, th), th);
    worst_mix = std::max({worst_mix, std::abs(two[k].probability - (w2 * p2 + (1 - w2) * 0.5)),
                          std::abs(four[k].probability - (w4 * p4 + (1 - w4) * 0.75))});
    if (k == 0 || k + 1 == grid.size()) {
      worst_end = std::max({worst_end, std::abs(two_pure[k].probability - p2), std::abs(four_pure[k].probability - p4)});
    }
  }
  const bool ok = worst_mix < 1e-12 && worst_end < 1e-12 && elapsed < 10.0;
  report(6, ok, "curves " + std::to_string(grid.size()) + " points, noise-mixture deviation " + num(worst_mix) +
                    ", pure endpoints deviation " + num(worst_end) + ", time=" + num(elapsed) + "s");
}

struct GateRow {
  double alpha;
  int r2, r3, r4;
  Vec2 out1, out3;
};

TEST(Acceptance, Criterion07EntanglingGate) {
  const double r2 = std::sqrt(2.0) / 2, r3 = std::sqrt(3.0) / 2;
  const Vec2 zero = kets::h(), one = kets::v(), plus = kets::p(), minus = kets::m();
  const Vec2 lk = kets::l(), rk = kets::r();
  auto q3 = [](double sign) { return ket(3 / std::sqrt(10.0), sign * kI / std::sqrt(10.0)); };
  const cplx a = (3.0 + 4.0 * kI) / 5.0, b = (3.0 - 4.0 * kI) / 5.0;
  const std::vector<GateRow> rows = {
      {0, 0, 1, 0, zero, q3(1)}, {0, 0, 1, 1, zero, q3(-1)},
      {kPi, 0, 1, 0, one, q3(1)}, {kPi, 0, 1, 1, one, q3(-1)},
      {kPi / 2, 0, 1, 0, plus, q3(1)}, {kPi / 2, 0, 1, 1, minus, q3(-1)},
      {kPi / 3, 0, 1, 0, ket(r3, 0.5), q3(1)}, {kPi / 3, 0, 1, 1, ket(r3, -0.5), q3(-1)},
      {0, 1, 1, 0, zero, q3(1)}, {0, 1, 1, 1, zero, q3(-1)},
      {kPi, 1, 1, 0, one, q3(1)}, {kPi, 1, 1, 1, one, q3(-1)},
      {0, 1, 0, 0, zero, lk}, {0, 1, 0, 1, zero, rk},
      {kPi, 1, 0, 0, one, lk}, {kPi, 1, 0, 1, one, rk},
      {kPi / 2, 1, 0, 0, Vec2(r2 * ket(1, -a)), lk}, {kPi / 2, 1, 0, 1, Vec2(r2 * ket(1, b)), rk},
      {kPi / 3, 1, 0, 0, ket(r3, -a / 2.0), lk}, {kPi / 3, 1, 0, 1, ket(r3, b / 2.0), rk},
      {kPi / 2, 1, 1, 0, ket(r3, -a / 2.0), q3(1)}, {kPi / 2, 1, 1, 1, Vec2(r2 * ket(1, b)), q3(-1)},
      {kPi / 3, 1, 1, 0, ket(r3, -a / 2.0), q3(1)}, {kPi / 3, 1, 1, 1, ket(r3, b / 2.0), q3(-1)},
  };
  int passed = 0;
  std::string failures;
  for (const auto& row : rows) {
    const auto t = cz_gate_protocol(row.alpha, OutcomeSource::postselect({0, row.r2, row.r3, row.r4}));
    const double o = overlap_modulus(t.physical_out.amps(), kron(VecX(row.out1), VecX(row.out3)));
    if (std::abs(o - 1) < 1e-9) {
      ++passed;
    } else {
      failures += " [alpha=" + num(row.alpha, 4) + " r=" + std::to_string(row.r2) + std::to_string(row.r3) +
                  std::to_string(row.r4) + " overlap " + num(o, 6) + "]";
    }
  }
  const double s3 = std::sqrt(3.0) / 2;
  VecX zz = VecX::Zero(4), bell = VecX::Zero(4);
  zz(0) = 1;
  bell(0) = s3;
  bell(3) = -0.5 * kI;
  const double f0 = overlap_modulus(cz_gate_protocol(0, OutcomeSource::postselect({0, 0, 0, 0})).physical_out.amps(), zz);
  const double f1 = overlap_modulus(cz_gate_protocol(kPi / 3, OutcomeSource::postselect({0, 0, 0, 0})).physical_out.amps(), bell);
  const bool branches_ok = std::abs(f0 - 1) < 1e-9 && std::abs(f1 - 1) < 1e-9;
  report(7, branches_ok && passed == static_cast<int>(rows.size()),
         std::string("branch outputs ") + (branches_ok ? "match" : "differ") + " (overlaps " + num(f0, 12) + ", " +
             num(f1, 12) + "); table rows " + std::to_string(passed) + "/24" + failures);
}

TEST(Acceptance, Criterion08LogicalGate) {
  double worst = 0.0, worst_cond = 0.0;
  for (int r4 = 0; r4 < 2; ++r4) {
    const auto check = cz_logical_map(r4);
    worst = std::max(worst, check.deviation);
    worst_cond = std::max(worst_cond, check.input_condition);
  }
  const bool ok = worst < 1e-10 && std::isfinite(worst_cond);
  report(8, ok, "max deviation from (HxH)(ZxZ)^r4 CZ = " + num(worst) + " over 4 inputs (input condition " + num(worst_cond) + ")");
}

TEST(Acceptance, Criterion09Witness) {
  const double th = kPi / 6;
  const auto literal = assemble_witness(th, witness_settings());
  const StateVector psi = build_psi6(th).permuted(psi6_settings_order());
  double worst_exact = 0.0;
  for (double f : {1.0, 0.9, 0.73, 0.5, 0.2}) {
    const DensityMatrix rho = white_noise(psi, f);
    const double w = weight_for_fidelity(f, 6);
    const auto est = fidelity_from_settings(exact_setting_data(rho, witness_settings_corrected()), th);
    worst_exact = std::max(worst_exact, std::abs(est.fidelity - (w + (1 - w) / 64)) - est.uncovered_weight);
  }
  const double f = 0.73;
  const auto sampled = fidelity_from_settings(sampled_setting_data(white_noise(psi, f), witness_settings_corrected(), 1000000, 7), th);
  const double z = std::abs(sampled.fidelity - f) / sampled.sigma;
  const bool ok = worst_exact < 1e-12 && z < 3.0;
  report(9, ok, "literal sum-of-terms residual " + num(literal.residual, 5) + "; exact-data deviation " + num(worst_exact) +
                    "; 1e6 shots/setting F=" + num(sampled.fidelity, 6) + " sigma=" + num(sampled.sigma, 3) + " z=" + num(z));
}

TEST(Acceptance, Criterion10Tomography) {
  const auto t0 = Clock::now();
  const StateVector psi4 = build_psi4(kPi / 6);
  const auto settings = axis_settings(4);
  // 1e5 shots in total, spread evenly over the 81 settings.
  const std::int64_t per_setting = (100000 + 80) / 81;
  const auto pure = ml_reconstruct(simulate_counts(DensityMatrix::pure(psi4), settings, per_setting, 11), {}, &psi4);
  const double w = weight_for_fidelity(0.73, 4);
  const CountsTable noisy_counts = simulate_counts(mix_with_identity(psi4, w), settings, per_setting, 12);
  const auto noisy = ml_reconstruct(noisy_counts, {}, &psi4);
  const auto mc = monte_carlo_error(noisy_counts, psi4, 100, 13);
  const double elapsed = seconds_since(t0);
  const bool ok = *pure.fidelity_to_target >= 0.99 && std::abs(*noisy.fidelity_to_target - 0.73) <= 0.01 && mc.sigma < 0.01 &&
                  elapsed < 300.0;
  report(10, ok, "w=" + num(w, 4) + " noiseless F=" + num(*pure.fidelity_to_target, 5) + " noisy F=" +
                     num(*noisy.fidelity_to_target, 5) + " MC sigma=" + num(mc.sigma, 3) + " time=" + num(elapsed) + "s");
}

TEST(Acceptance, Criterion11Deutsch) {
  double worst = 1.0;
  std::string detail;
  for (auto kind : {OracleKind::Constant, OracleKind::Balanced}) {
    for (int r1 = 0; r1 < 2; ++r1) {
      for (int r4 = 0; r4 < 2; ++r4) {
        const auto r = deutsch(kind, OutcomeSource::postselect({r1, 0, 0, r4}));
        const bool right = r.query_bit == (kind == OracleKind::Balanced ? 1 : 0) && !r.aborted;
        const double p = right ? r.success_probability : 0.0;
        worst = std::min(worst, p);
        detail += " " + std::string(kind == OracleKind::Constant ? "c" : "b") + std::to_string(r1) + std::to_string(r4) + "=" + num(p, 12);
      }
    }
  }
  report(11, std::abs(worst - 1) < 1e-12, "success probabilities (oracle, r1, r4):" + detail);
}

TEST(Acceptance, Criterion12MethodsPipeline) {
  double worst = 0.0;
  std::string detail;
  for (auto target : {PrepTarget::Psi4, PrepTarget::Psi6}) {
    const auto r = methods_pipeline(target, kPi / 6);
    const StateVector want = target == PrepTarget::Psi4 ? build_psi4(kPi / 6) : build_psi6(kPi / 6);
    worst = std::max(worst, std::abs(overlap_modulus(r.state, want) - 1));
    detail += std::string(target == PrepTarget::Psi4 ? " psi4" : " psi6") + " post-selection probability " + num(r.success_probability, 6);
  }
  report(12, worst < 1e-10, "max |overlap-1|=" + num(worst) + ";" + detail);
}

TEST(Acceptance, Criterion13Reproducibility) {
  const std::string counts_path = ::testing::TempDir() + "acceptance_counts.json";
  {
    std::ostringstream out, err;
    cli::run({"tomo", "simulate", "--state", "psi4", "--shots", "500", "--seed", "3", "--out", counts_path}, out, err);
  }
  const std::vector<std::vector<std::string>> commands = {
      {"state", "build", "--state", "psi6"},
      {"state", "analyze", "--state", "psi4"},
      {"protocol", "rotate", "--alpha", "pi/3", "--beta", "pi/2", "--gamma", "0", "--seed", "17"},
      {"protocol", "compensate", "--alpha", "2pi/3", "--resource", "4", "--seed", "17"},
      {"protocol", "cz", "--alpha", "pi/3", "--seed", "17"},
      {"protocol", "deutsch", "--oracle", "balanced", "--seed", "17"},
      {"tomo", "simulate", "--state", "psi4", "--fidelity", "0.73", "--shots", "2000", "--seed", "17"},
      {"tomo", "simulate", "--state", "psi4", "--shots", "2000", "--seed", "17", "--format", "csv"},
      {"tomo", "reconstruct", "--in", counts_path, "--target", "psi4", "--monte-carlo", "5", "--seed", "17"},
      {"witness", "fidelity", "--fidelity", "0.73", "--shots", "2000", "--seed", "17"},
      {"curve", "fig2", "--resource", "4", "--fidelity", "0.73", "--grid", "25", "--format", "csv"},
  };
  int identical = 0;
  std::string failures;
  for (const auto& args : commands) {
    std::ostringstream a, b, ea, eb;
    const int ca = cli::run(args, a, ea);
    const int cb = cli::run(args, b, eb);
    if (ca == 0 && cb == 0 && a.str() == b.str() && !a.str().empty()) {
      ++identical;
    } else {
      failures += " [" + args[0] + " " + args[1] + " exit " + std::to_string(ca) + "/" + std::to_string(cb) + "]";
    }
  }
  report(13, identical == static_cast<int>(commands.size()),
         std::to_string(identical) + "/" + std::to_string(commands.size()) + " seeded invocations byte-identical" + failures);
}

}  // namespace
}  // namespace corrspace
