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

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "corrspace/qmath.hpp"

/// Correlation, entropy and fidelity diagnostics for the wire resources.
namespace corrspace {

/// Pauli letters on named qubits with a coefficient.
struct PauliWord {
  std::vector<std::string> qubits;
  std::string letters;
  cplx coefficient{1.0, 0.0};
};

/// <a_i b_j> - <a_i><b_j>
double two_point_correlation(const StateVector& state, const std::string& i, const std::string& j, char a, char b);

/// max over a, b in {X, Y, Z} of |Q_ab|
double q_max(const StateVector& state, const std::string& i, const std::string& j);

/// Linear entropy of every single qubit, in label order.
std::vector<double> local_entropies(const StateVector& state);

// ---- six-qubit fidelity from 36 local settings ---------------------------------
// Settings and operators use the register order (4, 3, 3', 2, 1, 1').

/// The 36 settings as published.
std::vector<std::string> witness_settings();
/// Same list with entry 24 read as XYXXYX, the only change needed for the
/// settings to cover every Pauli word of the six-qubit projector.
std::vector<std::string> witness_settings_corrected();

/// The 36 published operators M_1..M_36 as 64x64 matrices.
std::vector<MatX> witness_terms(double theta);

/// Nonzero Pauli components P -> <psi|P|psi>/64 of the six-qubit projector.
std::vector<PauliWord> projector_pauli_expansion(double theta);

/// Pauli components of an arbitrary 6-qubit operator (coefficients tr(P A)/64).
std::vector<PauliWord> pauli_expansion(const MatX& op, double tol = 1e-13);

/// True when every non-identity letter of `word` matches the setting.
bool setting_covers(const std::string& setting, const std::string& word);

/// True when `op` is diagonal in the product eigenbasis of the setting.
bool diagonal_in_setting(const MatX& op, const std::string& setting, double tol = 1e-12);

struct WitnessAssembly {
  MatX sum;
  MatX projector;
  double residual = 0.0;  // max |sum - projector|
  Eigen::Index worst_row = 0;
  Eigen::Index worst_col = 0;
  double trace = 0.0;
  double target_expectation = 0.0;  // <psi| sum |psi>
  /// <psi|M_i|psi> by matrix contraction and by the Pauli expansion of M_i.
  std::vector<double> term_direct;
  std::vector<double> term_expanded;
  /// 1-based indices of the settings each M_i is diagonal in.
  std::vector<std::vector<int>> covering_settings;
  /// 1-based indices of terms with no covering setting.
  std::vector<int> uncovered_terms;
};

WitnessAssembly assemble_witness(double theta = kPi / 6,
                                 const std::vector<std::string>& settings = witness_settings());

/// Outcome distribution of one setting; outcome index bits follow the register
/// order, bit 0 meaning the +1 eigenstate of the measured Pauli.
struct SettingData {
  std::string setting;
  std::vector<double> probabilities;
  std::int64_t shots = 0;  // 0 marks exact probabilities
};

std::vector<SettingData> exact_setting_data(const DensityMatrix& rho, const std::vector<std::string>& settings);
/// Multinomial sampling of each setting; seeds derived per setting.
std::vector<SettingData> sampled_setting_data(const DensityMatrix& rho, const std::vector<std::string>& settings,
                                              std::int64_t shots, std::uint64_t seed);

struct FidelityEstimate {
  double fidelity = 0.0;
  double sigma = 0.0;  // statistical, zero for exact data
  /// Sum of |coefficient| of projector components no setting measures.
  double uncovered_weight = 0.0;
  std::vector<std::string> uncovered_words;
  /// Contribution of each required setting, in table order.
  std::vector<double> per_setting;
};

/// <psi6|rho|psi6> from setting data alone. Each Pauli component is read from
/// the first setting covering it. Throws std::invalid_argument when a setting
/// of `required` is missing from `data`.
FidelityEstimate fidelity_from_settings(const std::vector<SettingData>& data, double theta = kPi / 6,
                                        const std::vector<std::string>& required = witness_settings_corrected());

/// <M_i> for each published term from setting data; NaN for a term whose Pauli
/// components are not all measured.
std::vector<double> witness_term_values(const std::vector<SettingData>& data, double theta = kPi / 6);

}  // namespace corrspace
