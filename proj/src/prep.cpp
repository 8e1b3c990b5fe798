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

#include "corrspace/prep.hpp"

#include <cmath>

#include "corrspace/wires.hpp"

namespace corrspace {

namespace {

void check_transmission(double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw std::invalid_argument("transmissions must lie in [0, 1]");
}

FilterResult renormalize(const StateVector& filtered, double norm_in) {
  const double out = filtered.amps().squaredNorm();
  if (!(out > 1e-300)) throw NumericError("optical element transmits nothing");
  return {filtered.normalized(), out / (norm_in * norm_in)};
}

}  // namespace

void OpticalElement::validate() const {
  const std::size_t needed = (kind == ElementKind::CphasePbc || kind == ElementKind::SwapLabels) ? 2 : 1;
  if (qubits.size() != needed) throw std::invalid_argument("wrong number of qubits for optical element");
  check_transmission(t_h);
  check_transmission(t_v);
  if (kind == ElementKind::PbsExpand && new_label.empty()) throw std::invalid_argument("expansion needs a new label");
}

FilterResult pbc_filter(const StateVector& state, const std::string& qubit, double t_h, double t_v) {
  check_transmission(t_h);
  check_transmission(t_v);
  Mat2 f = Mat2::Zero();
  f(0, 0) = std::sqrt(t_h);
  f(1, 1) = std::sqrt(t_v);
  return renormalize(apply_local(f, state, qubit), state.norm());
}

StateVector hwp(const StateVector& state, const std::string& qubit, double angle) {
  Mat2 w;
  w << std::cos(2 * angle), std::sin(2 * angle), std::sin(2 * angle), -std::cos(2 * angle);
  return apply_local(w, state, qubit);
}

StateVector pbs_expand(const StateVector& state, const std::string& qubit, const std::string& new_label) {
  if (state.has(new_label)) throw std::invalid_argument("label '" + new_label + "' already exists");
  const int pos = state.position(qubit);
  const int n = state.num_qubits();
  std::vector<std::string> labels = state.labels();
  labels.insert(labels.begin() + pos + 1, new_label);
  // Copy each amplitude to the index with the new bit equal to the old one.
  VecX out = VecX::Zero(state.amps().size() * 2);
  const int low_bits = n - 1 - pos;
  for (Eigen::Index j = 0; j < state.amps().size(); ++j) {
    const Eigen::Index bit = (j >> low_bits) & 1;
    const Eigen::Index high = j >> low_bits;
    const Eigen::Index low = j & ((Eigen::Index{1} << low_bits) - 1);
    out(((high << 1 | bit) << low_bits) | low) = state.amps()(j);
  }
  return StateVector(std::move(labels), std::move(out));
}

FilterResult cphase_pbc(const StateVector& state, const std::string& a, const std::string& b, double t) {
  check_transmission(t);
  const int pa = state.position(a);
  const int pb = state.position(b);
  if (pa == pb) throw std::invalid_argument("the C-phase cube needs two photons");
  const int n = state.num_qubits();
  const Eigen::Index ma = Eigen::Index{1} << (n - 1 - pa);
  const Eigen::Index mb = Eigen::Index{1} << (n - 1 - pb);
  const double factors[4] = {1.0, std::sqrt(t), std::sqrt(t), 2.0 * t - 1.0};
  VecX out = state.amps();
  for (Eigen::Index j = 0; j < out.size(); ++j) out(j) *= factors[((j & ma) ? 2 : 0) + ((j & mb) ? 1 : 0)];
  return renormalize(StateVector(state.labels(), std::move(out)), state.norm());
}

PrepResult run_pipeline(const StateVector& input, const std::vector<OpticalElement>& elements) {
  PrepResult result{input.normalized(), 1.0, {}};
  for (const auto& e : elements) {
    e.validate();
    double p = 1.0;
    switch (e.kind) {
      case ElementKind::Pbc: {
        auto f = pbc_filter(result.state, e.qubits[0], e.t_h, e.t_v);
        result.state = std::move(f.state);
        p = f.probability;
        break;
      }
      case ElementKind::Hwp: result.state = hwp(result.state, e.qubits[0], e.angle); break;
      case ElementKind::PbsExpand: result.state = pbs_expand(result.state, e.qubits[0], e.new_label); break;
      case ElementKind::CphasePbc: {
        auto f = cphase_pbc(result.state, e.qubits[0], e.qubits[1], e.t_v);
        result.state = std::move(f.state);
        p = f.probability;
        break;
      }
      case ElementKind::SwapLabels: {
        auto labels = result.state.labels();
        const auto pa = static_cast<std::size_t>(result.state.position(e.qubits[0]));
        const auto pb = static_cast<std::size_t>(result.state.position(e.qubits[1]));
        std::swap(labels[pa], labels[pb]);
        result.state = result.state.relabeled(std::move(labels));
        break;
      }
    }
    result.success_probability *= p;
    result.steps.push_back(PrepStep{e, p});
  }
  return result;
}

StateVector methods_input() {
  VecX pair = VecX::Zero(4);
  pair(0) = pair(3) = 1.0 / std::sqrt(2.0);
  return StateVector({"1", "2", "3", "4"}, kron(pair, pair));
}

std::vector<OpticalElement> methods_elements(PrepTarget target, double theta) {
  check_theta(theta);
  const double ratio = std::pow(std::tan(theta), 2);  // (s/c)^2
  const double third = 1.0 / 3.0;
  auto pbc = [](std::string q, double th, double tv) {
    OpticalElement e;
    e.kind = ElementKind::Pbc;
    e.qubits = {std::move(q)};
    e.t_h = th;
    e.t_v = tv;
    return e;
  };
  if (ratio > 1.0) throw std::invalid_argument("the path-2 and path-3 filters need tan(theta) <= 1");

  std::vector<OpticalElement> out;
  for (const char* q : {"2", "4"}) {
    OpticalElement w;
    w.kind = ElementKind::Hwp;
    w.qubits = {q};
    w.angle = kPi / 8;
    out.push_back(w);
  }
  out.push_back(pbc("2", 1.0, ratio));
  out.push_back(pbc("3", 1.0, ratio));
  OpticalElement cphase;
  cphase.kind = ElementKind::CphasePbc;
  cphase.qubits = {"1", "4"};
  cphase.t_v = third;
  out.push_back(cphase);
  out.push_back(pbc("4", third, 1.0));
  // The cube combination leaves V on path 1 attenuated by 1/sqrt3 relative to H;
  // the target needs tan(theta).
  const double want = 3.0 * ratio;
  if (std::abs(want - 1.0) > 1e-12) out.push_back(want <= 1.0 ? pbc("1", 1.0, want) : pbc("1", 1.0 / want, 1.0));

  if (target == PrepTarget::Psi6) {
    OpticalElement swap;
    swap.kind = ElementKind::SwapLabels;
    swap.qubits = {"1", "2"};
    out.push_back(swap);
    for (const char* q : {"1", "3"}) {
      OpticalElement e;
      e.kind = ElementKind::PbsExpand;
      e.qubits = {q};
      e.new_label = std::string(q) + "'";
      out.push_back(e);
    }
  }
  return out;
}

PrepResult methods_pipeline(PrepTarget target, double theta) {
  PrepResult r = run_pipeline(methods_input(), methods_elements(target, theta));
  if (target == PrepTarget::Psi4) {
    r.state = r.state.permuted({"1", "2", "3", "4"});
  } else {
    r.state = r.state.permuted({"1", "2", "1'", "3", "3'", "4"});
  }
  return r;
}

}  // namespace corrspace
