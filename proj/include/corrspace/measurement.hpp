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

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "corrspace/qmath.hpp"
#include "corrspace/wires.hpp"

namespace corrspace {

/// Two orthonormal kets; outcome r selects kets[r].
struct MeasurementBasis {
  std::string name;
  std::array<Vec2, 2> kets;
  std::optional<double> zeta;
  std::optional<double> theta;

  /// Throws std::invalid_argument unless the kets are orthonormal within tol.
  void validate(double tol = 1e-12) const;
};

/// Angle-dependent basis of the weighted wire. Outcome 0 induces a matrix
/// proportional to Hadamard Rz(zeta) on an A-site. zeta = 0 gives {H, V} and
/// zeta = pi gives {V, H}.
MeasurementBasis basis_B(double zeta, double theta);

/// {u0|0> - u1|1>, u1|0> + u0|1>} with u0,1 = (cos(t/4) -+ sin(t/4)) / sqrt2.
MeasurementBasis basis_u(double theta_c);

MeasurementBasis basis_z();
MeasurementBasis basis_x();
/// {|0> + i|1>, |0> - i|1>} / sqrt2
MeasurementBasis basis_y();

/// sum_s <phi|s> A[s], with a scalar / determinant-one split when invertible.
struct InducedOperator {
  Mat2 matrix;
  std::optional<cplx> scalar;
  std::optional<Mat2> special_unitary;
  /// True when matrix is a scalar multiple of a unitary.
  bool proportional_to_unitary = false;
};

InducedOperator induced_operator(const Vec2& basis_ket, const SiteTensor& site);

struct OutcomeRecord {
  std::string qubit;
  MeasurementBasis basis;
  int outcome = 0;
  double probability = 0.0;
};

struct Postselect {
  int outcome = 0;
};
struct Sample {
  std::mt19937_64* rng = nullptr;
};
using MeasureMode = std::variant<Postselect, Sample>;

template <class State>
struct Measured {
  OutcomeRecord record;
  State state;  // normalized, measured qubit removed
};

/// Born probabilities of the two outcomes (normalized input assumed).
std::array<double, 2> outcome_probabilities(const StateVector& state, const std::string& qubit,
                                            const MeasurementBasis& basis);
std::array<double, 2> outcome_probabilities(const DensityMatrix& rho, const std::string& qubit,
                                            const MeasurementBasis& basis);

/// Throws NumericError when post-selecting an outcome of vanishing probability.
Measured<StateVector> measure(const StateVector& state, const std::string& qubit,
                              const MeasurementBasis& basis, MeasureMode mode);
Measured<DensityMatrix> measure(const DensityMatrix& rho, const std::string& qubit,
                                const MeasurementBasis& basis, MeasureMode mode);

/// <ket|_qubit state, unnormalized, qubit removed.
StateVector project(const StateVector& state, const std::string& qubit, const Vec2& ket);
DensityMatrix project(const DensityMatrix& rho, const std::string& qubit, const Vec2& ket);

/// Supplies the mode for each successive measurement of a protocol:
/// a fixed outcome list, all zeros, or seeded sampling.
class OutcomeSource {
 public:
  static OutcomeSource postselect(std::vector<int> outcomes);
  static OutcomeSource zeros();
  static OutcomeSource sample(std::uint64_t seed);

  MeasureMode next();
  bool sampling() const { return sampling_; }

 private:
  bool sampling_ = false;
  bool all_zero_ = false;
  std::vector<int> outcomes_;
  std::size_t cursor_ = 0;
  std::mt19937_64 rng_;
};

}  // namespace corrspace
