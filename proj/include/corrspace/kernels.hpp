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

#include <span>
#include <string_view>
#include <vector>

#include "corrspace/qmath.hpp"

// Inner loops over amplitudes, matrix elements and projector lists.
//
// Every kernel exists twice with identical signatures: `serial` is the
// reference implementation and `omp` is the OpenMP version the library calls.
// Qubit positions count from the most significant bit (position 0).
namespace corrspace::kernels {

namespace serial {
void apply_1q(std::span<cplx> amps, int n, int pos, const Mat2& op);
void apply_cz(std::span<cplx> amps, int n, int a, int b);
void apply_controlled(std::span<cplx> amps, int n, int control, int target, const Mat2& op);
// sum_s conj(ket_s) amps[.. s at pos ..]; the result has n-1 qubits.
VecX contract_qubit(std::span<const cplx> amps, int n, int pos, const Vec2& ket);
// <ket|_pos rho |ket>_pos
MatX contract_qubit_dm(const MatX& rho, int n, int pos, const Vec2& ket);
// Partial trace; the result's qubits follow the order of keep_positions.
MatX reduce(const MatX& rho, int n, std::span<const int> keep_positions);
MatX reduce_pure(std::span<const cplx> amps, int n, std::span<const int> keep_positions);
// `word` has n letters from IXYZ.
cplx pauli_expectation(std::span<const cplx> amps, int n, std::string_view word);
cplx pauli_expectation_dm(const MatX& rho, int n, std::string_view word);
// out[j] = Re <k_j| rho |k_j>
void born_probabilities(const MatX& rho, std::span<const VecX> kets, std::span<double> out);
// sum_j w_j |k_j><k_j|
MatX weighted_projector_sum(std::span<const VecX> kets, std::span<const double> weights, int dim);
}  // namespace serial

namespace omp {
void apply_1q(std::span<cplx> amps, int n, int pos, const Mat2& op);
void apply_cz(std::span<cplx> amps, int n, int a, int b);
void apply_controlled(std::span<cplx> amps, int n, int control, int target, const Mat2& op);
// sum_s conj(ket_s) amps[.. s at pos ..]; the result has n-1 qubits.
VecX contract_qubit(std::span<const cplx> amps, int n, int pos, const Vec2& ket);
// <ket|_pos rho |ket>_pos
MatX contract_qubit_dm(const MatX& rho, int n, int pos, const Vec2& ket);
// Partial trace; the result's qubits follow the order of keep_positions.
MatX reduce(const MatX& rho, int n, std::span<const int> keep_positions);
MatX reduce_pure(std::span<const cplx> amps, int n, std::span<const int> keep_positions);
// `word` has n letters from IXYZ.
cplx pauli_expectation(std::span<const cplx> amps, int n, std::string_view word);
cplx pauli_expectation_dm(const MatX& rho, int n, std::string_view word);
// out[j] = Re <k_j| rho |k_j>
void born_probabilities(const MatX& rho, std::span<const VecX> kets, std::span<double> out);
// sum_j w_j |k_j><k_j|
MatX weighted_projector_sum(std::span<const VecX> kets, std::span<const double> weights, int dim);
}  // namespace omp

/// Number of OpenMP threads the omp kernels will use.
int max_threads();

}  // namespace corrspace::kernels
