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

#include <cmath>
#include <set>

#include <gtest/gtest.h>

#include "corrspace/analysis.hpp"
#include "corrspace/tomography.hpp"
#include "corrspace/wires.hpp"

namespace corrspace {
namespace {

constexpr double kTheta = kPi / 6;

StateVector six_in_settings_order() { return build_psi6(kTheta).permuted(psi6_settings_order()); }

TEST(Correlations, ConnectedCorrelatorOfProductStateVanishes) {
  const StateVector s = StateVector::product({"a", "b"}, {kets::p(), kets::r()});
  for (char a : {'X', 'Y', 'Z'}) {
    for (char b : {'X', 'Y', 'Z'}) EXPECT_NEAR(two_point_correlation(s, "a", "b", a, b), 0.0, 1e-15);
  }
  EXPECT_THROW(two_point_correlation(s, "a", "a", 'X', 'X'), std::invalid_argument);
}

TEST(Correlations, BellPairIsMaximal) {
  VecX bell = VecX::Zero(4);
  bell(0) = bell(3) = 1 / std::sqrt(2.0);
  const StateVector s({"a", "b"}, bell);
  EXPECT_NEAR(two_point_correlation(s, "a", "b", 'Y', 'Y'), -1.0, 1e-14);
  EXPECT_NEAR(q_max(s, "a", "b"), 1.0, 1e-14);
}

TEST(Correlations, WireValues) {
  EXPECT_NEAR(two_point_correlation(build_psi4(kTheta), "1", "3", 'X', 'X'), 0.375, 1e-12);
  EXPECT_NEAR(two_point_correlation(build_psi6(kTheta), "2", "4", 'X', 'Z'), std::sqrt(3.0) / 4, 1e-12);
  EXPECT_NEAR(two_point_correlation(build_psi6(kTheta), "3", "4", 'Z', 'X'), 0.375, 1e-12);
  EXPECT_NEAR(q_max(build_psi4(kPi / 4), "1", "3"), 0.0, 1e-12);
}

TEST(Entropy, WireValuesAndClusterLimit) {
  const auto e = local_entropies(build_psi4(kTheta));
  EXPECT_NEAR(e[0], 0.75, 1e-12);
  EXPECT_NEAR(e[1], 0.5625, 1e-12);
  EXPECT_NEAR(e[2], 0.75, 1e-12);
  // At the cluster point every A site is maximally entangled with the rest.
  const auto c = local_entropies(build_psi4(kPi / 4));
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(c[static_cast<std::size_t>(i)], 1.0, 1e-12);
}

TEST(PauliExpansion, ReconstructsOperator) {
  const MatX rho = DensityMatrix::pure(six_in_settings_order()).mat();
  const auto words = pauli_expansion(rho);
  MatX sum = MatX::Zero(64, 64);
  for (const auto& w : words) {
    MatX term = MatX::Identity(1, 1);
    for (char l : w.letters) term = kron(term, MatX(ops::pauli(l)));
    sum += w.coefficient * term;
  }
  EXPECT_LT((sum - rho).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_EQ(projector_pauli_expansion(kTheta).size(), words.size());
}

TEST(Settings, CoverageRule) {
  EXPECT_TRUE(setting_covers("XYZ", "XIZ"));
  EXPECT_TRUE(setting_covers("XYZ", "III"));
  EXPECT_FALSE(setting_covers("XYZ", "ZII"));
  EXPECT_TRUE(diagonal_in_setting(kron(MatX(ops::pauli_x()), MatX(ops::pauli_z())), "XZ"));
  EXPECT_FALSE(diagonal_in_setting(kron(MatX(ops::pauli_x()), MatX(ops::pauli_z())), "ZZ"));
}

TEST(Settings, CorrectedListCoversEveryWord) {
  const auto literal = witness_settings();
  const auto corrected = witness_settings_corrected();
  ASSERT_EQ(literal.size(), 36u);
  ASSERT_EQ(corrected.size(), 36u);
  int differing = 0;
  for (std::size_t i = 0; i < 36; ++i) differing += literal[i] != corrected[i];
  EXPECT_EQ(differing, 1);
  std::set<std::string> unique(corrected.begin(), corrected.end());
  EXPECT_EQ(unique.size(), 36u);
  for (const auto& w : projector_pauli_expansion(kTheta)) {
    bool covered = false;
    for (const auto& s : corrected) covered = covered || setting_covers(s, w.letters);
    EXPECT_TRUE(covered) << w.letters;
  }
}

TEST(Witness, LiteralTermsAreDiagnosedNotHidden) {
  const auto a = assemble_witness(kTheta, witness_settings());
  EXPECT_EQ(a.term_direct.size(), 36u);
  EXPECT_NEAR(a.residual, 0.24357, 1e-5);
  EXPECT_EQ(a.projector.rows(), 64);
  // The literal list leaves exactly one term without a setting in which it is diagonal.
  EXPECT_EQ(a.uncovered_terms, std::vector<int>{34});
  const auto fixed = assemble_witness(kTheta, witness_settings_corrected());
  EXPECT_TRUE(fixed.uncovered_terms.empty());
  const auto terms = witness_terms(kTheta);
  const auto settings = witness_settings_corrected();
  for (std::size_t i = 0; i < terms.size(); ++i) {
    ASSERT_FALSE(fixed.covering_settings[i].empty());
    const int k = fixed.covering_settings[i].front();
    EXPECT_TRUE(diagonal_in_setting(terms[i], settings[static_cast<std::size_t>(k - 1)])) << "term " << i + 1;
  }
}

TEST(Witness, ExactDataGivesWhiteNoiseFidelity) {
  const StateVector psi = six_in_settings_order();
  for (double f : {1.0, 0.73, 0.3}) {
    const DensityMatrix rho = white_noise(psi, f);
    const auto est = fidelity_from_settings(exact_setting_data(rho, witness_settings_corrected()), kTheta);
    EXPECT_NEAR(est.fidelity, f, 1e-12);
    EXPECT_EQ(est.sigma, 0.0);
    EXPECT_TRUE(est.uncovered_words.empty());
  }
}

TEST(Witness, LiteralSettingsReportUncoveredWeight) {
  const DensityMatrix rho = white_noise(six_in_settings_order(), 0.8);
  const auto est = fidelity_from_settings(exact_setting_data(rho, witness_settings()), kTheta, witness_settings());
  EXPECT_EQ(est.uncovered_words, std::vector<std::string>{"XYXXYX"});
  EXPECT_GT(est.uncovered_weight, 0.0);
  EXPECT_LE(std::abs(est.fidelity - 0.8), est.uncovered_weight + 1e-12);
}

TEST(Witness, MissingSettingIsAnError) {
  auto data = exact_setting_data(DensityMatrix::pure(six_in_settings_order()), witness_settings_corrected());
  data.pop_back();
  EXPECT_THROW(fidelity_from_settings(data, kTheta), std::invalid_argument);
}

TEST(Witness, SampledEstimateWithinErrorBar) {
  const DensityMatrix rho = white_noise(six_in_settings_order(), 0.73);
  const auto est = fidelity_from_settings(sampled_setting_data(rho, witness_settings_corrected(), 20000, 5), kTheta);
  EXPECT_GT(est.sigma, 0.0);
  EXPECT_LT(std::abs(est.fidelity - 0.73), 4 * est.sigma);
}

TEST(Witness, TermValuesOnPureState) {
  const DensityMatrix pure = DensityMatrix::pure(six_in_settings_order());
  const auto a = assemble_witness(kTheta, witness_settings());
  const auto literal = witness_term_values(exact_setting_data(pure, witness_settings()), kTheta);
  ASSERT_EQ(literal.size(), 36u);
  for (std::size_t i = 0; i < literal.size(); ++i) {
    if (i == 33) {
      EXPECT_TRUE(std::isnan(literal[i]));
    } else {
      EXPECT_NEAR(literal[i], a.term_direct[i], 1e-10) << "term " << i + 1;
    }
  }
  const auto fixed = witness_term_values(exact_setting_data(pure, witness_settings_corrected()), kTheta);
  double sum = 0.0;
  for (double v : fixed) sum += v;
  EXPECT_NEAR(sum, a.target_expectation, 1e-10);
}

}  // namespace
}  // namespace corrspace
