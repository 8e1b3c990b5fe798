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

#include "corrspace/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <regex>
#include <sstream>

#include <CLI11.hpp>

#include "corrspace/analysis.hpp"
#include "corrspace/measurement.hpp"
#include "corrspace/prep.hpp"
#include "corrspace/protocols.hpp"
#include "corrspace/serialize.hpp"
#include "corrspace/tomography.hpp"
#include "corrspace/wires.hpp"

namespace corrspace::cli {

namespace {

using io::Json;
using io::round15;

/// Bad flags or values detected after CLI11 parsing.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string theta = "pi/6";
  std::string alpha = "0";
  std::string beta = "0";
  std::string gamma = "0";
  std::string format = "json";
  std::string out_path;
  std::string seed;
  bool postselect_zeros = false;
  std::string outcomes;
  std::string resource = "4";
  std::string fidelity;
  int grid = 25;
  std::int64_t shots = 0;
  std::string state = "psi4";
  std::string method = "wire";
  std::string resource_file;
  std::string pipeline_file;
  std::string oracle = "constant";
  std::string settings = "axis";
  std::string input_path;
  std::string labels;
  std::string target;
  int monte_carlo = 0;
  bool exhaustive = false;
};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.15g", round15(x));
  return buf;
}

double angle_flag(const std::string& text, const char* name) {
  try {
    return parse_angle(text);
  } catch (const std::invalid_argument&) {
    throw UsageError(std::string("malformed angle for --") + name + ": '" + text + "'");
  }
}

std::uint64_t parse_seed(const std::string& text) {
  if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos) {
    throw UsageError("--seed must be a non-negative integer");
  }
  try {
    return std::stoull(text);
  } catch (const std::out_of_range&) {
    throw UsageError("--seed does not fit in 64 bits");
  }
}

double fidelity_flag(const Options& o, double fallback) {
  if (o.fidelity.empty()) return fallback;
  char* end = nullptr;
  const double f = std::strtod(o.fidelity.c_str(), &end);
  if (end == o.fidelity.c_str() || *end != '\0' || !std::isfinite(f)) throw UsageError("malformed --fidelity");
  return f;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Json read_json_file(const std::string& path) {
  try {
    return Json::parse(read_file(path));
  } catch (const Json::parse_error& e) {
    throw UsageError("'" + path + "' is not valid JSON: " + e.what());
  }
}

/// Holds everything one invocation needs beyond its flags.
class Runner {
 public:
  Runner(const Options& o, std::ostream& err) : o_(o), err_(err) {}

  double theta() const { return angle_flag(o_.theta, "theta"); }

  void require_json() const {
    if (o_.format != "json") throw UsageError("this command only writes JSON");
  }

  /// Seed from --seed, or a fresh one that is reported on stderr.
  std::uint64_t seed() {
    if (!seed_) {
      if (!o_.seed.empty()) {
        seed_ = parse_seed(o_.seed);
      } else {
        std::random_device rd;
        seed_ = (static_cast<std::uint64_t>(rd()) << 32) | rd();
        err_ << "seed: " << *seed_ << "\n";
      }
    }
    return *seed_;
  }

  /// Outcome source from --postselect-zeros, --outcomes or sampling.
  OutcomeSource source(Json& doc) {
    if (o_.postselect_zeros && !o_.outcomes.empty()) {
      throw UsageError("--postselect-zeros and --outcomes are mutually exclusive");
    }
    if (o_.postselect_zeros) {
      doc["mode"] = "postselect";
      return OutcomeSource::zeros();
    }
    if (!o_.outcomes.empty()) {
      std::vector<int> bits;
      for (const auto& b : split(o_.outcomes, ',')) {
        if (b != "0" && b != "1") throw UsageError("--outcomes takes a comma-separated list of 0 and 1");
        bits.push_back(b == "1");
      }
      doc["mode"] = "postselect";
      doc["outcomes"] = bits;
      return OutcomeSource::postselect(bits);
    }
    doc["mode"] = "sample";
    doc["seed"] = seed();
    return OutcomeSource::sample(seed());
  }

  CompensationResource resource() const {
    if (o_.resource == "2") return CompensationResource::TwoQubit;
    if (o_.resource == "4") return CompensationResource::FourQubit;
    throw UsageError("--resource must be 2 or 4");
  }

  StateVector named_state(const std::string& name, double theta) const {
    if (name == "psi4") return build_psi4(theta);
    if (name == "psi6") return build_psi6(theta);
    throw UsageError("--state must be psi4 or psi6");
  }

  std::string state_build() {
    require_json();
    const double th = theta();
    Json doc = io::document("state");
    doc["theta"] = round15(th);
    if (!o_.resource_file.empty()) {
      const ResourceSpec spec = io::resource_from_json(read_json_file(o_.resource_file));
      const ContractedState c = contract_resource(spec);
      doc["method"] = "resource";
      doc["resource"] = io::to_json(spec);
      doc["raw_norm"] = round15(c.raw_norm);
      doc["state"] = io::to_json(c.state);
      return io::dump(doc);
    }
    if (!o_.pipeline_file.empty()) {
      const PrepResult r = run_pipeline(methods_input(), io::pipeline_from_json(read_json_file(o_.pipeline_file)));
      doc["method"] = "prep";
      doc["prep"] = io::to_json(r);
      return io::dump(doc);
    }
    doc["name"] = o_.state;
    doc["method"] = o_.method;
    if (o_.method == "wire") {
      if (o_.state == "psi4") {
        const Wire w = psi4_wire(th);
        const ContractedState c = contract_wire(w);
        doc["wire"] = io::to_json(w);
        doc["raw_norm"] = round15(c.raw_norm);
        doc["state"] = io::to_json(c.state);
      } else if (o_.state == "psi6") {
        const ResourceSpec spec = psi6_resource(th);
        const ContractedState c = contract_resource(spec);
        doc["resource"] = io::to_json(spec);
        doc["raw_norm"] = round15(c.raw_norm);
        doc["state"] = io::to_json(build_psi6(th));
      } else {
        throw UsageError("--state must be psi4 or psi6");
      }
    } else if (o_.method == "literal") {
      if (o_.state != "psi6") throw UsageError("the literal construction exists for psi6 only");
      const ContractedState c = psi6_literal(th);
      doc["raw_norm"] = round15(c.raw_norm);
      doc["state"] = io::to_json(c.state);
    } else if (o_.method == "prep") {
      PrepTarget target = PrepTarget::Psi4;
      if (o_.state == "psi6") {
        target = PrepTarget::Psi6;
      } else if (o_.state != "psi4") {
        throw UsageError("--state must be psi4 or psi6");
      }
      const PrepResult r = methods_pipeline(target, th);
      doc["overlap_with_wire_state"] = round15(overlap_modulus(r.state, named_state(o_.state, th)));
      doc["prep"] = io::to_json(r);
    } else {
      throw UsageError("--method must be wire, literal or prep");
    }
    return io::dump(doc);
  }

  std::string state_analyze() {
    require_json();
    const double th = theta();
    const StateVector s = named_state(o_.state, th);
    Json doc = io::document("analysis");
    doc["name"] = o_.state;
    doc["theta"] = round15(th);
    doc["labels"] = s.labels();
    Json entropies;
    const auto e = local_entropies(s);
    for (std::size_t i = 0; i < e.size(); ++i) entropies[s.labels()[i]] = round15(e[i]);
    doc["entropies"] = std::move(entropies);
    Json pairs = Json::array();
    const auto& labels = s.labels();
    for (std::size_t i = 0; i < labels.size(); ++i) {
      for (std::size_t j = i + 1; j < labels.size(); ++j) {
        Json pair;
        pair["qubits"] = {labels[i], labels[j]};
        Json q;
        for (char a : {'X', 'Y', 'Z'}) {
          for (char b : {'X', 'Y', 'Z'}) {
            q[std::string{a, b}] = round15(two_point_correlation(s, labels[i], labels[j], a, b));
          }
        }
        pair["Q"] = std::move(q);
        pair["q_max"] = round15(q_max(s, labels[i], labels[j]));
        pairs.push_back(std::move(pair));
      }
    }
    doc["correlations"] = std::move(pairs);
    return io::dump(doc);
  }

  std::string protocol_rotate() {
    require_json();
    const double th = theta();
    const double a = angle_flag(o_.alpha, "alpha");
    const double b = angle_flag(o_.beta, "beta");
    const double g = angle_flag(o_.gamma, "gamma");
    Json doc = io::document("rotation");
    doc["theta"] = round15(th);
    doc["alpha"] = round15(a);
    doc["beta"] = round15(b);
    doc["gamma"] = round15(g);
    auto src = source(doc);
    const ProtocolTranscript t = rotate_sequence(a, b, g, std::move(src), th);
    doc["transcript"] = io::to_json(t);
    return io::dump(doc);
  }

  std::string protocol_compensate() {
    require_json();
    const double th = theta();
    const double a = angle_flag(o_.alpha, "alpha");
    const CompensationResource res = resource();
    Json doc = io::document("compensation");
    doc["theta"] = round15(th);
    doc["alpha"] = round15(a);
    doc["resource"] = std::stoi(o_.resource);
    doc["success_formula"] = round15(compensation_success_formula(a, res, th));
    if (o_.exhaustive) {
      const BranchSummary s = compensate_exhaustive(a, res, th);
      doc["mode"] = "exhaustive";
      doc["success_probability"] = round15(s.success_probability);
      doc["total_probability"] = round15(s.total_probability);
      Json branches = Json::array();
      for (const auto& t : s.branches) branches.push_back(io::to_json(t));
      doc["branches"] = std::move(branches);
      return io::dump(doc);
    }
    auto src = source(doc);
    doc["transcript"] = io::to_json(compensate(a, res, std::move(src), th));
    return io::dump(doc);
  }

  std::string protocol_cz() {
    require_json();
    const double th = theta();
    const double a = angle_flag(o_.alpha, "alpha");
    Json doc = io::document("entangling_gate");
    doc["theta"] = round15(th);
    doc["alpha"] = round15(a);
    auto src = source(doc);
    doc["transcript"] = io::to_json(cz_gate_protocol(a, std::move(src), th));
    return io::dump(doc);
  }

  std::string protocol_deutsch() {
    require_json();
    const double th = theta();
    OracleKind kind;
    if (o_.oracle == "constant") {
      kind = OracleKind::Constant;
    } else if (o_.oracle == "balanced") {
      kind = OracleKind::Balanced;
    } else {
      throw UsageError("--oracle must be constant or balanced");
    }
    Json doc = io::document("deutsch");
    doc["theta"] = round15(th);
    doc["oracle"] = o_.oracle;
    auto src = source(doc);
    const DeutschResult r = deutsch(kind, std::move(src), th);
    doc["query_bit"] = r.query_bit;
    doc["ancilla_bit"] = r.ancilla_bit;
    doc["verdict"] = r.aborted ? "abort" : (r.query_bit == 0 ? "constant" : "balanced");
    doc["aborted"] = r.aborted;
    doc["relabel_applies"] = r.relabel_applies;
    doc["success_probability"] = round15(r.success_probability);
    Json readout = Json::array();
    for (double p : r.readout) readout.push_back(round15(p));
    doc["readout_query_ancilla"] = std::move(readout);
    doc["transcript"] = io::to_json(r.transcript);
    return io::dump(doc);
  }

  std::string tomo_simulate() {
    const double th = theta();
    const StateVector psi = named_state(o_.state, th);
    const double f = fidelity_flag(o_, 1.0);
    const DensityMatrix rho = f < 1.0 ? white_noise(psi, f) : DensityMatrix::pure(psi);
    std::vector<std::string> settings;
    if (o_.settings == "axis") {
      settings = axis_settings(psi.num_qubits());
    } else if (o_.settings == "projector") {
      settings = projector_settings(psi.num_qubits());
    } else {
      throw UsageError("--settings must be axis or projector");
    }
    const std::int64_t shots = o_.shots > 0 ? o_.shots : 1000;
    const std::uint64_t s = seed();
    const CountsTable counts = simulate_counts(rho, settings, shots, s);
    if (o_.format == "csv") return "# seed=" + std::to_string(s) + "\n" + io::counts_to_csv(counts);
    Json doc = io::document("counts");
    doc["seed"] = s;
    doc["state"] = o_.state;
    doc["theta"] = round15(th);
    doc["fidelity"] = round15(f);
    doc["shots_per_setting"] = shots;
    doc["counts"] = io::to_json(counts);
    return io::dump(doc);
  }

  std::string tomo_reconstruct() {
    require_json();
    if (o_.input_path.empty()) throw UsageError("tomo reconstruct needs --in FILE");
    const std::string text = read_file(o_.input_path);
    const auto first = text.find_first_not_of(" \t\r\n");
    CountsTable counts;
    if (first != std::string::npos && text[first] == '{') {
      Json j;
      try {
        j = Json::parse(text);
      } catch (const Json::parse_error& e) {
        throw UsageError("'" + o_.input_path + "' is not valid JSON: " + e.what());
      }
      counts = io::counts_from_json(j.contains("counts") ? j["counts"] : j);
    } else {
      if (o_.labels.empty()) throw UsageError("CSV counts need --labels, e.g. --labels 1,2,3,4");
      counts = io::counts_from_csv(text, split(o_.labels, ','));
    }
    std::optional<StateVector> target;
    if (!o_.target.empty()) target = named_state(o_.target, theta());
    if (target && target->labels() != counts.labels) {
      *target = target->permuted(counts.labels);
    }
    Json doc = io::document("reconstruction");
    doc["input"] = o_.input_path;
    if (target) doc["target"] = o_.target;
    const ReconstructionResult r = ml_reconstruct(counts, {}, target ? &*target : nullptr);
    if (o_.monte_carlo > 0) {
      if (!target) throw UsageError("--monte-carlo needs --target");
      const std::uint64_t s = seed();
      const MonteCarloResult mc = monte_carlo_error(counts, *target, o_.monte_carlo, s);
      doc["seed"] = s;
      doc["monte_carlo_runs"] = o_.monte_carlo;
      doc["monte_carlo_mean"] = round15(mc.mean_fidelity);
      doc["monte_carlo_sigma"] = round15(mc.sigma);
    }
    doc["result"] = io::to_json(r);
    return io::dump(doc);
  }

  std::string witness_fidelity() {
    require_json();
    const double th = theta();
    const double f = fidelity_flag(o_, 1.0);
    std::vector<std::string> settings;
    if (o_.settings == "axis" || o_.settings == "corrected") {
      settings = witness_settings_corrected();
    } else if (o_.settings == "literal") {
      settings = witness_settings();
    } else {
      throw UsageError("--settings must be corrected or literal");
    }
    const StateVector psi = build_psi6(th);
    const DensityMatrix rho = white_noise(psi.permuted(psi6_settings_order()), f);
    Json doc = io::document("witness");
    doc["theta"] = round15(th);
    doc["state_fidelity"] = round15(f);
    std::vector<SettingData> data;
    if (o_.shots > 0) {
      const std::uint64_t s = seed();
      doc["seed"] = s;
      doc["shots_per_setting"] = o_.shots;
      data = sampled_setting_data(rho, settings, o_.shots, s);
    } else {
      data = exact_setting_data(rho, settings);
    }
    const WitnessAssembly assembly = assemble_witness(th, settings);
    const FidelityEstimate estimate = fidelity_from_settings(data, th, settings);
    doc["settings"] = settings;
    doc["report"] = io::witness_report(assembly, estimate, witness_term_values(data, th));
    return io::dump(doc);
  }

  std::string curve_fig2() {
    if (o_.grid < 2) throw UsageError("--grid needs at least 2 points");
    const double th = theta();
    const CompensationResource res = resource();
    const double f = fidelity_flag(o_, res == CompensationResource::TwoQubit ? 0.90 : 0.73);
    std::vector<double> alphas(static_cast<std::size_t>(o_.grid));
    for (int k = 0; k < o_.grid; ++k) alphas[static_cast<std::size_t>(k)] = 2 * kPi * k / (o_.grid - 1);
    const auto curve = noisy_success_curve(alphas, res, f, th);
    if (o_.format == "csv") {
      std::string csv = "alpha,p_success\n";
      for (const auto& p : curve) csv += fmt(p.alpha) + "," + fmt(p.probability) + "\n";
      return csv;
    }
    Json doc = io::document("success_curve");
    doc["theta"] = round15(th);
    doc["resource"] = std::stoi(o_.resource);
    doc["fidelity"] = round15(f);
    Json points = Json::array();
    for (const auto& p : curve) {
      Json x;
      x["alpha"] = round15(p.alpha);
      x["p_success"] = round15(p.probability);
      x["p_pure"] = round15(compensation_success_formula(p.alpha, res, th));
      points.push_back(std::move(x));
    }
    doc["points"] = std::move(points);
    return io::dump(doc);
  }

 private:
  const Options& o_;
  std::ostream& err_;
  std::optional<std::uint64_t> seed_;
};

void add_common(CLI::App* sub, Options& o, bool csv) {
  sub->add_option("--theta", o.theta, "Weight angle in radians, e.g. pi/6");
  sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember(csv ? std::vector<std::string>{"json", "csv"} : std::vector<std::string>{"json"}));
  sub->add_option("--out", o.out_path, "Write output to FILE instead of stdout");
}

void add_outcomes(CLI::App* sub, Options& o) {
  sub->add_flag("--postselect-zeros", o.postselect_zeros, "Post-select outcome 0 everywhere");
  sub->add_option("--outcomes", o.outcomes, "Comma-separated outcomes to post-select");
  sub->add_option("--seed", o.seed, "Seed for sampled outcomes");
}

}  // namespace

double parse_angle(std::string_view text) {
  static const std::regex pi_form(R"(^\s*([+-]?)\s*(\d+(?:\.\d*)?|\.\d+)?\s*\*?\s*(?:pi|PI|Pi)\s*(?:/\s*(\d+(?:\.\d*)?|\.\d+))?\s*$)");
  const std::string s(text);
  std::smatch m;
  if (std::regex_match(s, m, pi_form)) {
    double v = kPi;
    if (m[2].matched) v *= std::stod(m[2].str());
    if (m[3].matched) {
      const double den = std::stod(m[3].str());
      if (den == 0.0) throw std::invalid_argument("angle with zero denominator");
      v /= den;
    }
    return m[1].str() == "-" ? -v : v;
  }
  static const std::regex decimal(R"(^\s*[+-]?(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?\s*$)");
  if (!std::regex_match(s, decimal)) throw std::invalid_argument("malformed angle '" + s + "'");
  return std::stod(s);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Correlation-space quantum computation toolkit", "corrspace"};
  app.require_subcommand(1);

  auto* state = app.add_subcommand("state", "Build or analyze resource states")->require_subcommand(1);
  auto* state_build = state->add_subcommand("build", "Contract a resource state");
  add_common(state_build, o, false);
  state_build->add_option("--state", o.state, "psi4 or psi6");
  state_build->add_option("--method", o.method, "wire, literal or prep");
  state_build->add_option("--resource-file", o.resource_file, "JSON resource description to contract");
  state_build->add_option("--pipeline", o.pipeline_file, "JSON optical element list applied to two photon pairs");
  auto* state_analyze = state->add_subcommand("analyze", "Correlations and local entropies");
  add_common(state_analyze, o, false);
  state_analyze->add_option("--state", o.state, "psi4 or psi6");

  auto* protocol = app.add_subcommand("protocol", "Run measurement protocols")->require_subcommand(1);
  auto* rotate = protocol->add_subcommand("rotate", "Single-qubit rotation on the four-qubit wire");
  add_common(rotate, o, false);
  add_outcomes(rotate, o);
  rotate->add_option("--alpha", o.alpha);
  rotate->add_option("--beta", o.beta);
  rotate->add_option("--gamma", o.gamma);
  auto* compensate_cmd = protocol->add_subcommand("compensate", "Rotation with randomness compensation");
  add_common(compensate_cmd, o, false);
  add_outcomes(compensate_cmd, o);
  compensate_cmd->add_option("--alpha", o.alpha);
  compensate_cmd->add_option("--resource", o.resource, "2 or 4 qubits");
  compensate_cmd->add_flag("--exhaustive", o.exhaustive, "Enumerate every outcome branch");
  auto* cz = protocol->add_subcommand("cz", "Entangling gate on the six-qubit resource");
  add_common(cz, o, false);
  add_outcomes(cz, o);
  cz->add_option("--alpha", o.alpha);
  auto* deutsch_cmd = protocol->add_subcommand("deutsch", "Deutsch algorithm on the six-qubit resource");
  add_common(deutsch_cmd, o, false);
  add_outcomes(deutsch_cmd, o);
  deutsch_cmd->add_option("--oracle", o.oracle, "constant or balanced");

  auto* tomo = app.add_subcommand("tomo", "Tomography data and reconstruction")->require_subcommand(1);
  auto* simulate = tomo->add_subcommand("simulate", "Synthetic counts");
  add_common(simulate, o, true);
  simulate->add_option("--state", o.state, "psi4 or psi6");
  simulate->add_option("--fidelity", o.fidelity, "White-noise fidelity (default 1)");
  simulate->add_option("--shots", o.shots, "Shots per setting (default 1000)");
  simulate->add_option("--settings", o.settings, "axis or projector");
  simulate->add_option("--seed", o.seed);
  auto* reconstruct = tomo->add_subcommand("reconstruct", "Maximum-likelihood reconstruction");
  add_common(reconstruct, o, false);
  reconstruct->add_option("--in", o.input_path, "Counts as JSON or CSV");
  reconstruct->add_option("--labels", o.labels, "Qubit labels for CSV input, comma-separated");
  reconstruct->add_option("--target", o.target, "psi4 or psi6 for fidelity");
  reconstruct->add_option("--monte-carlo", o.monte_carlo, "Resampling runs for the fidelity error");
  reconstruct->add_option("--seed", o.seed);

  auto* witness = app.add_subcommand("witness", "Six-qubit fidelity from local settings")->require_subcommand(1);
  auto* witness_fid = witness->add_subcommand("fidelity", "Fidelity estimate of a white-noise state");
  add_common(witness_fid, o, false);
  witness_fid->add_option("--fidelity", o.fidelity, "White-noise fidelity (default 1)");
  witness_fid->add_option("--shots", o.shots, "Shots per setting; 0 uses exact probabilities");
  witness_fid->add_option("--settings", o.settings, "corrected or literal");
  witness_fid->add_option("--seed", o.seed);

  auto* curve = app.add_subcommand("curve", "Theory curves")->require_subcommand(1);
  auto* fig2 = curve->add_subcommand("fig2", "Compensation success probability under white noise");
  add_common(fig2, o, true);
  fig2->add_option("--resource", o.resource, "2 or 4 qubits");
  fig2->add_option("--fidelity", o.fidelity, "White-noise fidelity (default 0.90 / 0.73)");
  fig2->add_option("--grid", o.grid, "Number of alpha points on [0, 2pi]");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  Runner runner(o, err);
  const std::vector<std::pair<CLI::App*, std::function<std::string()>>> commands = {
      {state_build, [&] { return runner.state_build(); }},
      {state_analyze, [&] { return runner.state_analyze(); }},
      {rotate, [&] { return runner.protocol_rotate(); }},
      {compensate_cmd, [&] { return runner.protocol_compensate(); }},
      {cz, [&] { return runner.protocol_cz(); }},
      {deutsch_cmd, [&] { return runner.protocol_deutsch(); }},
      {simulate, [&] { return runner.tomo_simulate(); }},
      {reconstruct, [&] { return runner.tomo_reconstruct(); }},
      {witness_fid, [&] { return runner.witness_fidelity(); }},
      {fig2, [&] { return runner.curve_fig2(); }},
  };

  try {
    std::string payload;
    for (const auto& [cmd, action] : commands) {
      if (cmd->parsed()) payload = action();
    }
    if (o.out_path.empty()) {
      out << payload;
    } else {
      std::ofstream file(o.out_path, std::ios::binary);
      if (!file || !(file << payload)) {
        err << "error: cannot write '" << o.out_path << "'\n";
        return kExitNumeric;
      }
    }
    return kExitOk;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const NumericError& e) {
    err << "numeric error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::invalid_argument& e) {
    err << "invalid input: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    err << "invalid input: " << e.what() << "\n";
    return kExitUsage;
  } catch (const nlohmann::json::exception& e) {
    err << "invalid input: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace corrspace::cli
