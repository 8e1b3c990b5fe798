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
#include <optional>
#include <string>
#include <vector>

#include "corrspace/qmath.hpp"

/// White-noise models, synthetic counts and maximum-likelihood tomography.
namespace corrspace {

/// Mixing weight w with <psi| w|psi><psi| + (1-w) I/d |psi> = fidelity, d = 2^n.
/// Throws std::invalid_argument unless 1/d < fidelity <= 1.
double weight_for_fidelity(double fidelity, int num_qubits);

/// w |psi><psi| + (1 - w) I / 2^n
DensityMatrix mix_with_identity(const StateVector& psi, double weight);
DensityMatrix white_noise(const StateVector& psi, double fidelity_target);

/// A measurement setting is one letter per qubit.
///  - Axis settings use Z, X, Y and record all 2^n outcomes; outcome bit 0 is
///    H, P or R respectively.
///  - Projector settings use H, V, P, M, R, L and record a single count.
enum class SettingKind { Axis, Projector };

SettingKind setting_kind(const std::string& setting);
/// Product kets measured by a setting, one per recorded count.
std::vector<VecX> setting_kets(const std::string& setting);

/// All 3^n axis settings in lexicographic order over Z, X, Y.
std::vector<std::string> axis_settings(int num_qubits);
/// All 6^n projector settings over H, V, P, M, R, L.
std::vector<std::string> projector_settings(int num_qubits);

struct SettingCounts {
  std::string setting;
  std::vector<std::int64_t> counts;
  std::int64_t shots = 0;
};

struct CountsTable {
  std::vector<std::string> labels;
  std::vector<SettingCounts> rows;

  int num_qubits() const { return static_cast<int>(labels.size()); }
  std::int64_t total() const;
};

enum class SamplingMode { Multinomial, Poisson };

/// Multinomial: each axis setting draws `shots` outcomes; a projector setting
/// draws a binomial count out of `shots`. Poisson: each cell independently with
/// mean shots * p. Settings run in parallel with seeds derived per setting.
CountsTable simulate_counts(const DensityMatrix& rho, const std::vector<std::string>& settings,
                            std::int64_t shots, std::uint64_t seed,
                            SamplingMode mode = SamplingMode::Multinomial);

/// Exact expectation of each count cell (shots * p) as a real-valued table.
std::vector<std::vector<double>> expected_counts(const DensityMatrix& rho,
                                                 const std::vector<std::string>& settings,
                                                 std::int64_t shots);

struct MlOptions {
  int max_iterations = 10000;
  /// Stop when the log-likelihood per count improves by less than this.
  double tolerance = 1e-9;
};

struct ReconstructionResult {
  DensityMatrix rho;
  double log_likelihood = 0.0;  // per count
  int iterations = 0;
  bool converged = false;
  bool informationally_complete = true;
  std::optional<double> fidelity_to_target;
  std::optional<double> fidelity_sigma;
};

/// Diluted fixed-point likelihood ascent started from the maximally mixed state.
ReconstructionResult ml_reconstruct(const CountsTable& counts, const MlOptions& options = {},
                                    const StateVector* target = nullptr);

struct MonteCarloResult {
  double mean_fidelity = 0.0;
  double sigma = 0.0;
  std::vector<double> fidelities;
};

/// Resamples every count cell as Poisson(count), reconstructs, and returns the
/// sample mean and standard deviation of the fidelity to `target`.
MonteCarloResult monte_carlo_error(const CountsTable& counts, const StateVector& target, int runs = 100,
                                   std::uint64_t seed = 1, const MlOptions& options = {});

}  // namespace corrspace
