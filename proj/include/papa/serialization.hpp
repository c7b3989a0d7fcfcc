// Copyright 2026 The PAPA Tomography Authors
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

#include "json.hpp"
#include "papa/channel.hpp"
#include "papa/gate_simulator.hpp"
#include "papa/gates.hpp"
#include "papa/gst_decomposition.hpp"
#include "papa/papa_model.hpp"
#include "papa/reconstructor.hpp"
#include "papa/tomography.hpp"

namespace papa {

using Json = nlohmann::json;

/// Every *_from_json throws Error(kParse) on malformed input and lets domain
/// validation errors through unchanged.

Json to_json(const CMatrix& m);
CMatrix matrix_from_json(const Json& j);

Json to_json(QubitPair pair);
QubitPair pair_from_json(const Json& j);

Json to_json(const GateLayer& gate);
/// Accepts a label string or the object form.
GateLayer gate_from_json(const Json& j);

Json to_json(const ErrorModel& err);
ErrorModel error_from_json(const Json& j);

Json to_json(const SolverConfig& cfg);
/// Missing fields keep their defaults.
SolverConfig solver_config_from_json(const Json& j);

Json to_json(const Superoperator& s);
Superoperator superop_from_json(const Json& j);

Json to_json(const ChoiState& c);
ChoiState choi_from_json(const Json& j);

Json to_json(const PapaModel& m);
PapaModel model_from_json(const Json& j);

Json to_json(const TomographyData& d);
TomographyData tomography_from_json(const Json& j);

Json to_json(const ConvexDecomposition& d, const GateSet& gs);

Json to_json(const CharacterizedGateSet& cgs);
CharacterizedGateSet gateset_from_json(const Json& j);

Json to_json(const ReconstructionResult& r);

Json parse_json(const std::string& text);
Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace papa
