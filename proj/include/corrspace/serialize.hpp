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

#include <string>
#include <vector>

#include <json.hpp>

#include "corrspace/analysis.hpp"
#include "corrspace/measurement.hpp"
#include "corrspace/prep.hpp"
#include "corrspace/protocols.hpp"
#include "corrspace/tomography.hpp"
#include "corrspace/wires.hpp"

/// JSON and CSV encodings. Field order is fixed and every double is rounded
/// to 15 significant digits, so equal inputs give byte-identical documents.
/// Complex numbers are [re, im] pairs; matrices are row-major.
namespace corrspace::io {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "corrspace/1";

double round15(double x);

/// {"schema": ..., "kind": kind}
Json document(const std::string& kind);
/// Two-space indented text with a trailing newline.
std::string dump(const Json& j);

Json complex_json(cplx z);
Json vector_json(const VecX& v);
Json matrix_json(const MatX& m);
VecX vector_from_json(const Json& j);
MatX matrix_from_json(const Json& j);

Json to_json(const StateVector& s);
Json to_json(const DensityMatrix& rho);
Json to_json(const MeasurementBasis& b);
Json to_json(const OutcomeRecord& r);
Json to_json(const PauliFrame& f);
Json to_json(const ProtocolTranscript& t);

Json to_json(const SiteTensor& s);
Json to_json(const Wire& w);
Json to_json(const ResourceSpec& r);
SiteTensor site_from_json(const Json& j);
Wire wire_from_json(const Json& j);
ResourceSpec resource_from_json(const Json& j);

Json to_json(const CountsTable& c);
CountsTable counts_from_json(const Json& j);
/// Lines of "setting,outcome,count" after a header line.
std::string counts_to_csv(const CountsTable& c);
CountsTable counts_from_csv(const std::string& text, std::vector<std::string> labels);

Json to_json(const ReconstructionResult& r);

/// Per-term expectations, assembled fidelity and the operator residual.
Json witness_report(const WitnessAssembly& assembly, const FidelityEstimate& estimate,
                    const std::vector<double>& term_values);

Json to_json(const OpticalElement& e);
OpticalElement element_from_json(const Json& j);
std::vector<OpticalElement> pipeline_from_json(const Json& j);
Json to_json(const PrepResult& r);

}  // namespace corrspace::io
