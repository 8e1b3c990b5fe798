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

#include "corrspace/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace corrspace::io {

double round15(double x) {
  if (!std::isfinite(x)) return x;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  const double r = std::strtod(buf, nullptr);
  return r == 0.0 ? 0.0 : r;  // no "-0.0"
}

Json document(const std::string& kind) {
  Json j;
  j["schema"] = kSchema;
  j["kind"] = kind;
  return j;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json complex_json(cplx z) { return Json::array({round15(z.real()), round15(z.imag())}); }

Json vector_json(const VecX& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_json(v(i)));
  return out;
}

Json matrix_json(const MatX& m) {
  Json out = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_json(m(r, c)));
    out.push_back(std::move(row));
  }
  return out;
}

namespace {

cplx complex_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2) throw std::invalid_argument("complex numbers are [re, im] pairs");
  return {j[0].get<double>(), j[1].get<double>()};
}

Vec2 ket_from_json(const Json& j) {
  const VecX v = vector_from_json(j);
  if (v.size() != 2) throw std::invalid_argument("single-qubit kets have two components");
  return v;
}

std::string site_kind_name(SiteKind k) {
  switch (k) {
    case SiteKind::A: return "A";
    case SiteKind::B: return "B";
    case SiteKind::BRotated: return "B_rotated";
    case SiteKind::Canonical: return "canonical";
  }
  return "?";
}

std::string element_kind_name(ElementKind k) {
  switch (k) {
    case ElementKind::Pbc: return "pbc";
    case ElementKind::Hwp: return "hwp";
    case ElementKind::PbsExpand: return "pbs_expand";
    case ElementKind::CphasePbc: return "cphase_pbc";
    case ElementKind::SwapLabels: return "swap_labels";
  }
  return "?";
}

Json labels_json(const std::vector<std::string>& labels) { return Json(labels); }

}  // namespace

VecX vector_from_json(const Json& j) {
  if (!j.is_array()) throw std::invalid_argument("expected an array of complex numbers");
  VecX v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = complex_from_json(j[i]);
  return v;
}

MatX matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw std::invalid_argument("expected a nonempty array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  MatX m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const Json& row = j[static_cast<std::size_t>(r)];
    if (static_cast<Eigen::Index>(row.size()) != cols) throw std::invalid_argument("ragged matrix");
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = complex_from_json(row[static_cast<std::size_t>(c)]);
  }
  return m;
}

Json to_json(const StateVector& s) {
  Json j;
  j["ordering"] = "first label is the most significant bit";
  j["labels"] = labels_json(s.labels());
  j["amplitudes"] = vector_json(s.amps());
  return j;
}

Json to_json(const DensityMatrix& rho) {
  Json j;
  j["ordering"] = "first label is the most significant bit";
  j["labels"] = labels_json(rho.labels());
  j["matrix"] = matrix_json(rho.mat());
  return j;
}

Json to_json(const MeasurementBasis& b) {
  Json j;
  j["name"] = b.name;
  if (b.zeta) j["zeta"] = round15(*b.zeta);
  if (b.theta) j["theta"] = round15(*b.theta);
  j["kets"] = Json::array({vector_json(b.kets[0]), vector_json(b.kets[1])});
  return j;
}

Json to_json(const OutcomeRecord& r) {
  Json j;
  j["qubit"] = r.qubit;
  j["basis"] = to_json(r.basis);
  j["outcome"] = r.outcome;
  j["probability"] = round15(r.probability);
  return j;
}

Json to_json(const PauliFrame& f) {
  Json out = Json::array();
  for (const auto& w : f.wires) {
    Json e;
    e["x"] = w[0];
    e["z"] = w[1];
    out.push_back(std::move(e));
  }
  return out;
}

Json to_json(const ProtocolTranscript& t) {
  Json j;
  j["status"] = t.status;
  j["success"] = t.success;
  j["branch_probability"] = round15(t.total_probability);
  Json outcomes = Json::array();
  for (const auto& r : t.outcomes) outcomes.push_back(to_json(r));
  j["outcomes"] = std::move(outcomes);
  j["frame"] = to_json(t.frame);
  j["logical_out"] = vector_json(t.logical_out);
  j["physical_out"] = to_json(t.physical_out);
  return j;
}

Json to_json(const SiteTensor& s) {
  Json j;
  j["kind"] = site_kind_name(s.kind);
  if (s.kind == SiteKind::A || s.kind == SiteKind::Canonical) j["theta"] = round15(s.theta);
  if (s.kind == SiteKind::Canonical) {
    j["w"] = matrix_json(s.basis_map[0]);  // map of outcome 0 is W itself
  }
  Json labels = Json::array();
  for (const auto& l : s.basis_labels) labels.push_back(l);
  j["basis_labels"] = std::move(labels);
  j["basis_kets"] = Json::array({vector_json(s.basis_kets[0]), vector_json(s.basis_kets[1])});
  return j;
}

Json to_json(const Wire& w) {
  Json j;
  j["labels"] = labels_json(w.labels);
  Json sites = Json::array();
  for (const auto& s : w.sites) sites.push_back(to_json(s));
  j["sites"] = std::move(sites);
  j["left"] = vector_json(w.left);
  j["right"] = vector_json(w.right);
  return j;
}

Json to_json(const ResourceSpec& r) {
  Json j;
  Json wires = Json::array();
  for (const auto& w : r.wires) wires.push_back(to_json(w));
  j["wires"] = std::move(wires);
  Json injected = Json::array();
  for (const auto& s : r.injected) {
    Json e;
    e["label"] = s.label;
    e["ket"] = vector_json(s.ket);
    injected.push_back(std::move(e));
  }
  j["injected"] = std::move(injected);
  Json edges = Json::array();
  for (const auto& e : r.edges) {
    Json x;
    x["first"] = e.first;
    x["second"] = e.second;
    x["gate"] = e.gate == CouplingGate::CZ ? "CZ" : "CX";
    edges.push_back(std::move(x));
  }
  j["edges"] = std::move(edges);
  return j;
}

SiteTensor site_from_json(const Json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "A") return SiteTensor::a(j.at("theta").get<double>());
  if (kind == "B") return SiteTensor::b();
  if (kind == "B_rotated") return SiteTensor::b_rotated();
  if (kind == "canonical") {
    const MatX w = matrix_from_json(j.at("w"));
    if (w.rows() != 2 || w.cols() != 2) throw std::invalid_argument("canonical sites need a 2x2 unitary");
    return SiteTensor::canonical(Mat2(w), j.at("theta").get<double>());
  }
  throw std::invalid_argument("unknown site kind '" + kind + "'");
}

Wire wire_from_json(const Json& j) {
  Wire w;
  w.labels = j.at("labels").get<std::vector<std::string>>();
  for (const auto& s : j.at("sites")) w.sites.push_back(site_from_json(s));
  if (j.contains("left")) w.left = ket_from_json(j["left"]);
  if (j.contains("right")) w.right = ket_from_json(j["right"]);
  w.validate();
  return w;
}

ResourceSpec resource_from_json(const Json& j) {
  ResourceSpec r;
  for (const auto& w : j.at("wires")) r.wires.push_back(wire_from_json(w));
  if (j.contains("injected")) {
    for (const auto& s : j["injected"]) {
      InjectedSite site;
      site.label = s.at("label").get<std::string>();
      if (s.contains("ket")) site.ket = ket_from_json(s["ket"]);
      r.injected.push_back(std::move(site));
    }
  }
  if (j.contains("edges")) {
    for (const auto& e : j["edges"]) {
      CouplingEdge edge;
      edge.first = e.at("first").get<std::string>();
      edge.second = e.at("second").get<std::string>();
      const std::string gate = e.value("gate", std::string("CZ"));
      if (gate == "CZ") {
        edge.gate = CouplingGate::CZ;
      } else if (gate == "CX") {
        edge.gate = CouplingGate::CX;
      } else {
        throw std::invalid_argument("unknown coupling gate '" + gate + "'");
      }
      r.edges.push_back(std::move(edge));
    }
  }
  r.validate();
  return r;
}

Json to_json(const CountsTable& c) {
  Json j;
  j["labels"] = labels_json(c.labels);
  Json rows = Json::array();
  for (const auto& r : c.rows) {
    Json x;
    x["setting"] = r.setting;
    x["shots"] = r.shots;
    x["counts"] = r.counts;
    rows.push_back(std::move(x));
  }
  j["rows"] = std::move(rows);
  return j;
}

CountsTable counts_from_json(const Json& j) {
  CountsTable c;
  c.labels = j.at("labels").get<std::vector<std::string>>();
  for (const auto& r : j.at("rows")) {
    SettingCounts row;
    row.setting = r.at("setting").get<std::string>();
    row.counts = r.at("counts").get<std::vector<std::int64_t>>();
    std::int64_t sum = 0;
    for (auto n : row.counts) {
      if (n < 0) throw std::invalid_argument("negative count");
      sum += n;
    }
    row.shots = r.value("shots", sum);
    if (row.setting.size() != c.labels.size()) throw std::invalid_argument("setting length differs from the register size");
    c.rows.push_back(std::move(row));
  }
  return c;
}

std::string counts_to_csv(const CountsTable& c) {
  std::ostringstream out;
  out << "setting,outcome,count\n";
  for (const auto& r : c.rows) {
    for (std::size_t k = 0; k < r.counts.size(); ++k) out << r.setting << ',' << k << ',' << r.counts[k] << '\n';
  }
  return out.str();
}

CountsTable counts_from_csv(const std::string& text, std::vector<std::string> labels) {
  CountsTable c;
  c.labels = std::move(labels);
  std::istringstream in(text);
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (header) {
      header = false;
      if (line.rfind("setting", 0) == 0) continue;
    }
    const auto a = line.find(',');
    const auto b = line.find(',', a == std::string::npos ? a : a + 1);
    if (a == std::string::npos || b == std::string::npos) throw std::invalid_argument("malformed counts line: " + line);
    const std::string setting = line.substr(0, a);
    const auto outcome = static_cast<std::size_t>(std::stoull(line.substr(a + 1, b - a - 1)));
    const std::int64_t count = std::stoll(line.substr(b + 1));
    if (count < 0) throw std::invalid_argument("negative count");
    if (setting.size() != c.labels.size()) throw std::invalid_argument("setting length differs from the register size");
    if (c.rows.empty() || c.rows.back().setting != setting) c.rows.push_back(SettingCounts{setting, {}, 0});
    auto& row = c.rows.back();
    if (row.counts.size() <= outcome) row.counts.resize(outcome + 1, 0);
    row.counts[outcome] += count;
    row.shots += count;
  }
  for (auto& row : c.rows) {
    const std::size_t want = setting_kind(row.setting) == SettingKind::Axis ? (std::size_t{1} << c.labels.size()) : 1;
    if (row.counts.size() > want) throw std::invalid_argument("outcome index out of range for setting " + row.setting);
    row.counts.resize(want, 0);
  }
  return c;
}

Json to_json(const ReconstructionResult& r) {
  Json j;
  j["log_likelihood_per_count"] = round15(r.log_likelihood);
  j["iterations"] = r.iterations;
  j["converged"] = r.converged;
  j["informationally_complete"] = r.informationally_complete;
  if (r.fidelity_to_target) j["fidelity"] = round15(*r.fidelity_to_target);
  if (r.fidelity_sigma) j["fidelity_sigma"] = round15(*r.fidelity_sigma);
  j["rho"] = to_json(r.rho);
  return j;
}

Json witness_report(const WitnessAssembly& assembly, const FidelityEstimate& estimate,
                    const std::vector<double>& term_values) {
  Json j;
  j["fidelity"] = round15(estimate.fidelity);
  j["sigma"] = round15(estimate.sigma);
  j["operator_residual"] = round15(assembly.residual);
  j["operator_trace"] = round15(assembly.trace);
  j["uncovered_weight"] = round15(estimate.uncovered_weight);
  j["uncovered_words"] = estimate.uncovered_words;
  Json terms = Json::array();
  for (std::size_t i = 0; i < term_values.size(); ++i) {
    Json t;
    t["index"] = i + 1;
    if (std::isfinite(term_values[i])) {
      t["expectation"] = round15(term_values[i]);
    } else {
      t["expectation"] = nullptr;
    }
    terms.push_back(std::move(t));
  }
  j["terms"] = std::move(terms);
  j["term_sum"] = [&] {
    double s = 0.0;
    for (double v : term_values) {
      if (!std::isfinite(v)) return Json(nullptr);
      s += v;
    }
    return Json(round15(s));
  }();
  return j;
}

Json to_json(const OpticalElement& e) {
  Json j;
  j["kind"] = element_kind_name(e.kind);
  j["qubits"] = e.qubits;
  switch (e.kind) {
    case ElementKind::Pbc:
      j["t_h"] = round15(e.t_h);
      j["t_v"] = round15(e.t_v);
      break;
    case ElementKind::Hwp: j["angle"] = round15(e.angle); break;
    case ElementKind::PbsExpand: j["new_label"] = e.new_label; break;
    case ElementKind::CphasePbc: j["t_v"] = round15(e.t_v); break;
    case ElementKind::SwapLabels: break;
  }
  return j;
}

OpticalElement element_from_json(const Json& j) {
  OpticalElement e;
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "pbc") {
    e.kind = ElementKind::Pbc;
  } else if (kind == "hwp") {
    e.kind = ElementKind::Hwp;
  } else if (kind == "pbs_expand") {
    e.kind = ElementKind::PbsExpand;
  } else if (kind == "cphase_pbc") {
    e.kind = ElementKind::CphasePbc;
  } else if (kind == "swap_labels") {
    e.kind = ElementKind::SwapLabels;
  } else {
    throw std::invalid_argument("unknown optical element '" + kind + "'");
  }
  if (j.contains("qubit")) e.qubits = {j["qubit"].get<std::string>()};
  if (j.contains("qubits")) e.qubits = j["qubits"].get<std::vector<std::string>>();
  e.t_h = j.value("t_h", 1.0);
  e.t_v = j.value("t_v", 1.0);
  e.angle = j.value("angle", 0.0);
  e.new_label = j.value("new_label", std::string());
  e.validate();
  return e;
}

std::vector<OpticalElement> pipeline_from_json(const Json& j) {
  const Json& list = j.is_object() ? j.at("elements") : j;
  if (!list.is_array()) throw std::invalid_argument("a pipeline is an ordered list of elements");
  std::vector<OpticalElement> out;
  for (const auto& e : list) out.push_back(element_from_json(e));
  return out;
}

Json to_json(const PrepResult& r) {
  Json j;
  j["success_probability"] = round15(r.success_probability);
  Json steps = Json::array();
  for (const auto& s : r.steps) {
    Json x = to_json(s.element);
    x["probability"] = round15(s.probability);
    steps.push_back(std::move(x));
  }
  j["steps"] = std::move(steps);
  j["state"] = to_json(r.state);
  return j;
}

}  // namespace corrspace::io
