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

#include "corrspace/protocols.hpp"

#include <cmath>

#include <Eigen/SVD>

#include "corrspace/tomography.hpp"

namespace corrspace {

namespace {

constexpr double kZeroBranch = 1e-15;

std::vector<int> bits_of(const std::vector<OutcomeRecord>& records) {
  std::vector<int> out;
  out.reserve(records.size());
  for (const auto& r : records) out.push_back(r.outcome);
  return out;
}

double branch_weight(const StateVector& s) { return s.amps().squaredNorm(); }
double branch_weight(const DensityMatrix& rho) { return rho.trace().real(); }

template <class State>
void enumerate_from(const ProgramRun<State>& prefix, const MeasurementProgram& program,
                    std::vector<ProgramRun<State>>& out) {
  const auto step = program(bits_of(prefix.records));
  if (!step) {
    out.push_back(prefix);
    return;
  }
  for (int r = 0; r < 2; ++r) {
    const State projected = project(prefix.state, step->qubit, step->basis.kets[static_cast<std::size_t>(r)]);
    const double p = branch_weight(projected);
    if (!(p > kZeroBranch)) continue;
    auto measured = measure(prefix.state, step->qubit, step->basis, Postselect{r});
    ProgramRun<State> next{prefix.records, std::move(measured.state), prefix.probability * measured.record.probability};
    next.records.push_back(std::move(measured.record));
    enumerate_from(next, program, out);
  }
}

// Logical vector behind a single readout qubit, normalized.
VecX logical_from_readout(const StateVector& physical, const SiteTensor& site) {
  const Mat2 r = readout_map(site);
  return (r.inverse() * physical.amps()).normalized();
}

VecX logical_from_pair(const StateVector& physical, const SiteTensor& first, const SiteTensor& second) {
  const MatX inv = kron(MatX(readout_map(first).inverse()), MatX(readout_map(second).inverse()));
  return (inv * physical.amps()).normalized();
}

}  // namespace

Mat2 PauliFrame::op(std::size_t wire) const {
  const auto& e = wires.at(wire);
  Mat2 out = Mat2::Identity();
  if (e[0]) out = out * ops::pauli_x();
  if (e[1]) out = out * ops::pauli_z();
  return out;
}

std::vector<int> ProtocolTranscript::outcome_bits() const { return bits_of(outcomes); }

template <class State>
ProgramRun<State> run_program(const State& state, const MeasurementProgram& program, OutcomeSource& source) {
  ProgramRun<State> run{{}, state, 1.0};
  while (const auto step = program(bits_of(run.records))) {
    auto measured = measure(run.state, step->qubit, step->basis, source.next());
    run.probability *= measured.record.probability;
    run.records.push_back(std::move(measured.record));
    run.state = std::move(measured.state);
  }
  return run;
}

template <class State>
std::vector<ProgramRun<State>> enumerate_branches(const State& state, const MeasurementProgram& program) {
  std::vector<ProgramRun<State>> out;
  enumerate_from(ProgramRun<State>{{}, state, 1.0}, program, out);
  return out;
}

template ProgramRun<StateVector> run_program(const StateVector&, const MeasurementProgram&, OutcomeSource&);
template ProgramRun<DensityMatrix> run_program(const DensityMatrix&, const MeasurementProgram&, OutcomeSource&);
template std::vector<ProgramRun<StateVector>> enumerate_branches(const StateVector&, const MeasurementProgram&);
template std::vector<ProgramRun<DensityMatrix>> enumerate_branches(const DensityMatrix&, const MeasurementProgram&);

// ---- single-qubit rotations -------------------------------------------------

MeasurementProgram rotation_program(double alpha, double beta, double gamma, double theta) {
  const std::array<MeasurementStep, 3> steps = {MeasurementStep{"1", basis_B(alpha, theta)},
                                                MeasurementStep{"2", basis_B(beta, theta)},
                                                MeasurementStep{"3", basis_B(gamma, theta)}};
  return [steps](const std::vector<int>& done) -> std::optional<MeasurementStep> {
    if (done.size() < steps.size()) return steps[done.size()];
    return std::nullopt;
  };
}

ProtocolTranscript rotate_sequence(double alpha, double beta, double gamma, OutcomeSource source, double theta) {
  const auto run = run_program(build_psi4(theta), rotation_program(alpha, beta, gamma, theta), source);
  ProtocolTranscript t;
  t.outcomes = run.records;
  t.frame.wires = {{0, 0}};
  t.physical_out = run.state;
  t.logical_out = logical_from_readout(run.state, SiteTensor::b());
  t.total_probability = run.probability;
  const auto bits = t.outcome_bits();
  t.success = bits == std::vector<int>{0, 0, 0};
  t.status = t.success ? "ok" : "wrong-outcome";
  return t;
}

SuccessProbability success_probability(double alpha, double theta) {
  check_theta(theta);
  const double s2 = std::sin(2.0 * theta);
  const double c2 = std::cos(2.0 * theta);
  return {s2 * s2 / (2.0 * (1.0 - c2 * std::cos(alpha))), s2 * s2 / (2.0 * (1.0 + std::abs(c2)))};
}

double wrong_angle(double alpha, double theta) {
  check_theta(theta);
  const double t = std::tan(theta);
  const double sh = std::sin(alpha / 2.0);
  if (std::abs(sh) < 1e-300) return kPi;
  return 2.0 * std::atan(-t * t * std::cos(alpha / 2.0) / sh);
}

double nblock_bound(double alpha, double theta, int n) {
  if (n < 0) throw std::invalid_argument("block count must be non-negative");
  const auto sp = success_probability(alpha, theta);
  return sp.p_s + (1.0 - sp.p_s) * (1.0 - std::pow(1.0 - sp.p_theta, n));
}

// ---- randomness compensation ------------------------------------------------

StateVector compensation_resource_state(CompensationResource resource, double theta) {
  if (resource == CompensationResource::FourQubit) return build_psi4(theta);
  check_theta(theta);
  return contract_wire(Wire{{"3", "4"}, {SiteTensor::a(theta), SiteTensor::b()}}).state;
}

MeasurementProgram compensation_program(double alpha, CompensationResource resource, double theta) {
  const MeasurementBasis first = basis_B(alpha, theta);
  if (resource == CompensationResource::TwoQubit) {
    return [first](const std::vector<int>& done) -> std::optional<MeasurementStep> {
      if (done.empty()) return MeasurementStep{"3", first};
      return std::nullopt;
    };
  }
  const double correction = alpha - wrong_angle(alpha, theta);
  const std::array<MeasurementBasis, 2> retry = {basis_B(correction, theta), basis_B(-correction, theta)};
  return [first, retry](const std::vector<int>& done) -> std::optional<MeasurementStep> {
    switch (done.size()) {
      case 0: return MeasurementStep{"1", first};
      case 1: return MeasurementStep{"2", basis_z()};
      case 2:
        if (done[0] == 0) return MeasurementStep{"3", basis_z()};
        return MeasurementStep{"3", retry[static_cast<std::size_t>(done[1])]};
      default: return std::nullopt;
    }
  };
}

bool compensation_succeeded(CompensationResource resource, const std::vector<int>& outcomes) {
  if (resource == CompensationResource::TwoQubit) return outcomes.size() == 1 && outcomes[0] == 0;
  if (outcomes.size() != 3) return false;
  return outcomes[0] == 0 || outcomes[2] == 0;
}

namespace {

ProtocolTranscript finish_compensation(const ProgramRun<StateVector>& run, CompensationResource resource) {
  ProtocolTranscript t;
  t.outcomes = run.records;
  t.physical_out = run.state;
  t.logical_out = logical_from_readout(run.state, SiteTensor::b());
  t.total_probability = run.probability;
  const auto bits = t.outcome_bits();
  t.success = compensation_succeeded(resource, bits);
  t.frame.wires = {{0, 0}};
  if (t.success && resource == CompensationResource::FourQubit) {
    t.frame.wires[0] = bits[0] == 0 ? std::array<int, 2>{bits[2], bits[1]} : std::array<int, 2>{0, bits[1]};
  }
  t.status = t.success ? "ok" : "wrong-outcome";
  return t;
}

}  // namespace

ProtocolTranscript compensate(double alpha, CompensationResource resource, OutcomeSource source, double theta) {
  const auto run = run_program(compensation_resource_state(resource, theta),
                               compensation_program(alpha, resource, theta), source);
  return finish_compensation(run, resource);
}

BranchSummary compensate_exhaustive(double alpha, CompensationResource resource, double theta) {
  BranchSummary summary;
  const auto runs = enumerate_branches(compensation_resource_state(resource, theta),
                                       compensation_program(alpha, resource, theta));
  for (const auto& run : runs) {
    auto t = finish_compensation(run, resource);
    summary.total_probability += t.total_probability;
    if (t.success) summary.success_probability += t.total_probability;
    summary.branches.push_back(std::move(t));
  }
  return summary;
}

double compensation_success_formula(double alpha, CompensationResource resource, double theta) {
  const double ps = success_probability(alpha, theta).p_s;
  if (resource == CompensationResource::TwoQubit) return ps;
  return ps + (1.0 - ps) * success_probability(alpha - wrong_angle(alpha, theta), theta).p_s;
}

std::vector<CurvePoint> noisy_success_curve(const std::vector<double>& alpha_grid, CompensationResource resource,
                                            double fidelity, double theta) {
  const DensityMatrix rho = white_noise(compensation_resource_state(resource, theta), fidelity);
  std::vector<CurvePoint> out(alpha_grid.size());
  const auto count = static_cast<std::ptrdiff_t>(alpha_grid.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t k = 0; k < count; ++k) {
    const double alpha = alpha_grid[static_cast<std::size_t>(k)];
    double p = 0.0;
    for (const auto& run : enumerate_branches(rho, compensation_program(alpha, resource, theta))) {
      if (compensation_succeeded(resource, bits_of(run.records))) p += run.probability;
    }
    out[static_cast<std::size_t>(k)] = {alpha, p};
  }
  return out;
}

// ---- entangling gate ---------------------------------------------------------

MeasurementProgram cz_program(double alpha, double theta) {
  const MeasurementBasis first = basis_B(alpha, theta);
  const MeasurementBasis middle = basis_B(kPi / 2, theta);
  return [first, middle](const std::vector<int>& done) -> std::optional<MeasurementStep> {
    switch (done.size()) {
      case 0: return MeasurementStep{"1", first};
      case 1: return MeasurementStep{"2", middle};
      case 2: return MeasurementStep{"3", middle};
      case 3:
        if (done[1] == 0 && done[2] == 0) return MeasurementStep{"4", basis_y()};
        return MeasurementStep{"4", basis_z()};
      default: return std::nullopt;
    }
  };
}

ProtocolTranscript cz_gate_protocol(double alpha, OutcomeSource source, double theta) {
  const auto run = run_program(build_psi6(theta), cz_program(alpha, theta), source);
  ProtocolTranscript t;
  t.outcomes = run.records;
  t.physical_out = run.state.permuted({"1'", "3'"});
  t.logical_out = logical_from_pair(t.physical_out, SiteTensor::b(), SiteTensor::b_rotated());
  t.total_probability = run.probability;
  const auto bits = t.outcome_bits();
  t.success = bits[0] == 0 && bits[1] == 0 && bits[2] == 0;
  t.frame.wires = {{0, 0}, {0, 0}};
  if (bits[1] == 0 && bits[2] == 0) t.frame.wires = {{0, bits[3]}, {0, bits[3]}};
  t.status = t.success ? "ok" : (bits[1] == 0 && bits[2] == 0 ? "wrong-angle" : "decoupled");
  return t;
}

LogicalMapCheck cz_logical_map(int r4, double theta) {
  if (r4 != 0 && r4 != 1) throw std::invalid_argument("r4 must be 0 or 1");
  struct Input {
    double alpha;
    Vec2 second_left;
  };
  const std::array<Input, 4> inputs = {Input{0.0, kets::p()}, Input{kPi, kets::p()}, Input{kPi / 2, kets::h()},
                                       Input{kPi / 3, kets::v()}};
  const MeasurementBasis middle = basis_B(kPi / 2, theta);
  const SiteTensor weighted = SiteTensor::a(theta);
  const MatX readout_inv =
      kron(MatX(readout_map(SiteTensor::b()).inverse()), MatX(readout_map(SiteTensor::b_rotated()).inverse()));

  Mat4 in_mat;
  Mat4 out_mat;
  for (std::size_t k = 0; k < inputs.size(); ++k) {
    ResourceSpec spec = psi6_resource(theta);
    spec.wires[1].left = inputs[k].second_left;
    const auto contracted = contract_resource(spec);
    StateVector raw(contracted.state.labels(), contracted.state.amps() * contracted.raw_norm);
    const Vec2 first_ket = basis_B(inputs[k].alpha, theta).kets[0];
    raw = project(raw, "1", first_ket);
    raw = project(raw, "2", middle.kets[0]);
    raw = project(raw, "3", middle.kets[0]);
    raw = project(raw, "4", basis_y().kets[static_cast<std::size_t>(r4)]);
    raw = raw.permuted({"1'", "3'"});
    const Vec2 first_logical = induced_operator(first_ket, weighted).matrix * spec.wires[0].left;
    const auto col = static_cast<Eigen::Index>(k);
    in_mat.col(col) = kron(VecX(first_logical), VecX(inputs[k].second_left));
    out_mat.col(col) = readout_inv * raw.amps();
  }

  LogicalMapCheck check;
  check.map = out_mat * in_mat.inverse();
  Mat4 zz = Mat4::Identity();
  if (r4) zz = kron(MatX(ops::pauli_z()), MatX(ops::pauli_z()));
  check.expected = kron(MatX(ops::hadamard()), MatX(ops::hadamard())) * zz * ops::cz();
  check.deviation = distance_up_to_scalar(check.map, check.expected);
  Eigen::JacobiSVD<Mat4> svd(in_mat);
  const auto& sv = svd.singularValues();
  check.input_condition = sv(0) / sv(3);
  return check;
}

// ---- Deutsch ------------------------------------------------------------------

MeasurementProgram deutsch_program(OracleKind kind, double theta) {
  const MeasurementBasis first = basis_B(kPi, theta);
  const MeasurementBasis middle = kind == OracleKind::Constant ? basis_B(0.0, theta) : basis_B(kPi / 2, theta);
  return [kind, first, middle](const std::vector<int>& done) -> std::optional<MeasurementStep> {
    switch (done.size()) {
      case 0: return MeasurementStep{"1", first};
      case 1: return MeasurementStep{"2", middle};
      case 2: return MeasurementStep{"3", middle};
      case 3:
        if (kind == OracleKind::Constant) return MeasurementStep{"4", middle};
        if (done[1] == 0 && done[2] == 0) return MeasurementStep{"4", basis_y()};
        return MeasurementStep{"4", basis_z()};
      default: return std::nullopt;
    }
  };
}

std::array<int, 2> deutsch_relabel(std::array<int, 2> raw, int r1, int r4, OracleKind kind) {
  for (int b : {raw[0], raw[1], r1, r4}) {
    if (b != 0 && b != 1) throw std::invalid_argument("bits must be 0 or 1");
  }
  std::array<int, 2> out = raw;
  out[1] ^= r1;
  // Through the coupling an X on the ancilla wire picks up a Z on the query wire.
  if (kind == OracleKind::Balanced) out[0] ^= r1 ^ r4;
  return out;
}

DeutschResult deutsch(OracleKind kind, OutcomeSource source, double theta) {
  const auto run = run_program(build_psi6(theta), deutsch_program(kind, theta), source);
  DeutschResult result;
  ProtocolTranscript& t = result.transcript;
  t.outcomes = run.records;
  t.physical_out = run.state.permuted({"1'", "3'"});
  t.logical_out = logical_from_pair(t.physical_out, SiteTensor::b(), SiteTensor::b_rotated());
  t.total_probability = run.probability;
  t.frame.wires = {{0, 0}, {0, 0}};
  const auto bits = t.outcome_bits();
  const int r1 = bits[0];
  const int r4 = bits[3];
  const bool side_outcomes = bits[1] != 0 || bits[2] != 0;
  result.aborted = kind == OracleKind::Balanced && side_outcomes;
  result.relabel_applies = !side_outcomes;

  // Physical amplitudes are indexed by (1', 3') = (ancilla, query).
  const VecX& amps = t.physical_out.amps();
  const int expected_query = kind == OracleKind::Balanced ? 1 : 0;
  for (int ancilla = 0; ancilla < 2; ++ancilla) {
    for (int query = 0; query < 2; ++query) {
      const double p = std::norm(amps(2 * ancilla + query));
      const auto fixed = deutsch_relabel({query, ancilla}, r1, r4, kind);
      result.readout[static_cast<std::size_t>(2 * fixed[0] + fixed[1])] += p;
    }
  }
  result.success_probability = result.aborted ? 0.0 : result.readout[2 * expected_query] + result.readout[2 * expected_query + 1];

  std::array<int, 2> raw{};
  if (source.sampling()) {
    auto q = measure(t.physical_out, "3'", basis_z(), source.next());
    auto a = measure(q.state, "1'", basis_z(), source.next());
    raw = {q.record.outcome, a.record.outcome};
    t.outcomes.push_back(q.record);
    t.outcomes.push_back(a.record);
    const auto fixed = deutsch_relabel(raw, r1, r4, kind);
    result.query_bit = fixed[0];
    result.ancilla_bit = fixed[1];
  } else {
    std::size_t best = 0;
    for (std::size_t k = 1; k < 4; ++k) {
      if (result.readout[k] > result.readout[best]) best = k;
    }
    result.query_bit = static_cast<int>(best / 2);
    result.ancilla_bit = static_cast<int>(best % 2);
  }
  t.success = !result.aborted && result.query_bit == expected_query;
  t.status = result.aborted ? "abort" : (result.relabel_applies ? "ok" : "outside-relabel-regime");
  return result;
}

}  // namespace corrspace
