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

#include "papa/serialization.hpp"

#include <fstream>
#include <sstream>

namespace papa {

namespace {

[[noreturn]] void parse_error(const std::string& what) { throw Error(ErrorCode::kParse, what); }

const Json& field(const Json& j, const char* name) {
  if (!j.is_object()) parse_error(std::string("expected an object holding '") + name + "'");
  auto it = j.find(name);
  if (it == j.end()) parse_error(std::string("missing field '") + name + "'");
  return *it;
}

template <typename T>
T get(const Json& j, const char* name) {
  try {
    return field(j, name).get<T>();
  } catch (const nlohmann::json::exception& e) {
    parse_error(std::string("field '") + name + "': " + e.what());
  }
}

template <typename T>
T get_or(const Json& j, const char* name, T fallback) {
  if (!j.contains(name)) return fallback;
  return get<T>(j, name);
}

Json pair_values(const std::map<QubitPair, double>& values) {
  Json out = Json::array();
  for (const auto& [pair, v] : values) out.push_back({{"pair", to_json(pair)}, {"value", v}});
  return out;
}

}  // namespace

Json to_json(const CMatrix& m) {
  Json data = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      data.push_back(m(r, c).real());
      data.push_back(m(r, c).imag());
    }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

CMatrix matrix_from_json(const Json& j) {
  const auto rows = get<long long>(j, "rows");
  const auto cols = get<long long>(j, "cols");
  const auto data = get<std::vector<double>>(j, "data");
  if (rows < 0 || cols < 0 || static_cast<long long>(data.size()) != 2 * rows * cols) {
    parse_error("matrix data length does not match rows*cols complex entries");
  }
  CMatrix m(rows, cols);
  size_t idx = 0;
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c, idx += 2) m(r, c) = Complex(data[idx], data[idx + 1]);
  return m;
}

Json to_json(QubitPair pair) { return Json::array({pair.k, pair.l}); }

QubitPair pair_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer()) {
    parse_error("qubit pair must be a two-element integer array");
  }
  return {j[0].get<int>(), j[1].get<int>()};
}

Json to_json(const GateLayer& gate) {
  Json singles = Json::array();
  for (Pauli p : gate.single_qubit) singles.push_back(std::string(1, pauli_char(p)));
  Json cnot = nullptr;
  if (gate.cnot) cnot = Json::array({gate.cnot->control, gate.cnot->target});
  return {{"n_qubits", gate.n_qubits}, {"single_qubit", singles}, {"cnot", cnot}, {"label", gate.label()}};
}

GateLayer gate_from_json(const Json& j) {
  if (j.is_string()) return GateLayer::parse(j.get<std::string>());
  GateLayer gate;
  gate.n_qubits = get<int>(j, "n_qubits");
  for (const auto& s : get<std::vector<std::string>>(j, "single_qubit")) {
    if (s.size() != 1) parse_error("single-qubit entries must be one of I, X, Y, Z");
    gate.single_qubit.push_back(pauli_from_char(s[0]));
  }
  if (j.contains("cnot") && !j["cnot"].is_null()) {
    const QubitPair ct = pair_from_json(j["cnot"]);
    gate.cnot = Cnot{ct.k, ct.l};
  }
  gate.validate();
  return gate;
}

Json to_json(const ErrorModel& err) {
  return std::visit(
      [](const auto& e) -> Json {
        using T = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<T, CoherentLocal>) {
          return {{"type", "coherent_local"}, {"phi", e.phi}};
        } else if constexpr (std::is_same_v<T, Decoherence>) {
          return {{"type", "decoherence"}, {"t1", e.t1}, {"t2", e.t2}, {"duration", e.duration}};
        } else {
          return {{"type", "cr_coherent"}, {"beta", e.beta}, {"phi_zz", e.phi_zz}};
        }
      },
      err);
}

ErrorModel error_from_json(const Json& j) {
  const auto type = get<std::string>(j, "type");
  ErrorModel err;
  if (type == "coherent_local") {
    err = CoherentLocal{get<double>(j, "phi")};
  } else if (type == "decoherence") {
    const Decoherence defaults;
    err = Decoherence{get_or(j, "t1", defaults.t1), get_or(j, "t2", defaults.t2),
                      get_or(j, "duration", defaults.duration)};
  } else if (type == "cr_coherent") {
    err = CRCoherent{get<double>(j, "beta"), get<double>(j, "phi_zz")};
  } else {
    parse_error("unknown error model type '" + type + "'");
  }
  validate_error_model(err);
  return err;
}

Json to_json(const SolverConfig& cfg) {
  return {{"eps_tol", cfg.eps_tol},
          {"max_iters", cfg.max_iters},
          {"fd_step", cfg.fd_step},
          {"penalty_weight", cfg.penalty_weight},
          {"penalty_continuation", cfg.penalty_continuation},
          {"seed", cfg.seed},
          {"factor_order", cfg.factor_order == FactorOrder::kFirstPairLast ? "first_pair_last" : "first_pair_first"}};
}

SolverConfig solver_config_from_json(const Json& j) {
  if (j.is_null()) return {};
  if (!j.is_object()) parse_error("solver config must be an object");
  SolverConfig cfg;
  cfg.eps_tol = get_or(j, "eps_tol", cfg.eps_tol);
  cfg.max_iters = get_or(j, "max_iters", cfg.max_iters);
  cfg.fd_step = get_or(j, "fd_step", cfg.fd_step);
  cfg.penalty_weight = get_or(j, "penalty_weight", cfg.penalty_weight);
  cfg.penalty_continuation = get_or(j, "penalty_continuation", cfg.penalty_continuation);
  cfg.seed = get_or<std::uint64_t>(j, "seed", cfg.seed);
  const auto order = get_or<std::string>(j, "factor_order", "first_pair_last");
  if (order == "first_pair_last") {
    cfg.factor_order = FactorOrder::kFirstPairLast;
  } else if (order == "first_pair_first") {
    cfg.factor_order = FactorOrder::kFirstPairFirst;
  } else {
    parse_error("unknown factor_order '" + order + "'");
  }
  cfg.validate();
  return cfg;
}

Json to_json(const Superoperator& s) { return {{"n_qubits", s.n_qubits}, {"data", to_json(s.data)}}; }

Superoperator superop_from_json(const Json& j) {
  Superoperator s{get<int>(j, "n_qubits"), matrix_from_json(field(j, "data"))};
  const Eigen::Index dim = Eigen::Index{1} << (2 * s.n_qubits);
  if (s.n_qubits < 1 || s.data.rows() != dim || s.data.cols() != dim) {
    throw Error(ErrorCode::kInvalidDimension, "superoperator size does not match n_qubits");
  }
  return s;
}

Json to_json(const ChoiState& c) { return {{"n_qubits", c.n_qubits}, {"data", to_json(c.data)}}; }

ChoiState choi_from_json(const Json& j) {
  ChoiState c{get<int>(j, "n_qubits"), matrix_from_json(field(j, "data"))};
  const Eigen::Index dim = Eigen::Index{1} << (2 * c.n_qubits);
  if (c.n_qubits < 1 || c.data.rows() != dim || c.data.cols() != dim) {
    throw Error(ErrorCode::kInvalidDimension, "Choi state size does not match n_qubits");
  }
  return c;
}

Json to_json(const PapaModel& m) {
  Json factors = Json::array();
  for (const auto& f : m.factors) factors.push_back({{"pair", to_json(f.pair)}, {"chi", to_json(f.chi.data)}});
  return {{"n_qubits", m.n_qubits}, {"factors", factors}};
}

PapaModel model_from_json(const Json& j) {
  PapaModel m;
  m.n_qubits = get<int>(j, "n_qubits");
  const Json& factors = field(j, "factors");
  if (!factors.is_array()) parse_error("'factors' must be an array");
  for (const auto& f : factors) m.factors.push_back({pair_from_json(field(f, "pair")), {matrix_from_json(field(f, "chi"))}});
  m.validate();
  return m;
}

Json to_json(const TomographyData& d) {
  Json sigma = Json::array();
  for (const auto& [pair, c] : d.sigma) sigma.push_back({{"pair", to_json(pair)}, {"choi", to_json(c.data)}});
  return {{"n_qubits", d.n_qubits}, {"sigma", sigma}};
}

TomographyData tomography_from_json(const Json& j) {
  TomographyData d;
  d.n_qubits = get<int>(j, "n_qubits");
  const Json& sigma = field(j, "sigma");
  if (!sigma.is_array()) parse_error("'sigma' must be an array");
  for (const auto& e : sigma) {
    const QubitPair pair = pair_from_json(field(e, "pair"));
    if (d.sigma.count(pair)) parse_error("duplicate pair " + pair.label() + " in tomography data");
    d.sigma[pair] = ChoiState{2, matrix_from_json(field(e, "choi"))};
  }
  d.validate();
  return d;
}

Json to_json(const ConvexDecomposition& d, const GateSet& gs) {
  Json terms = Json::array();
  for (const auto& t : d.terms) {
    terms.push_back({{"coefficient", t.coefficient}, {"gate_index", t.gate_index}, {"label", gs.labels.at(t.gate_index)}});
  }
  return {{"terms", terms}, {"residual", d.residual}};
}

Json to_json(const CharacterizedGateSet& cgs) {
  Json gates = Json::array();
  for (const auto& [index, choi] : cgs.choi) {
    gates.push_back({{"index", index}, {"label", cgs.labels.at(index)}, {"choi", to_json(choi.data)}});
  }
  return {{"pair", to_json(cgs.pair)}, {"error", to_json(cgs.error)}, {"labels", cgs.labels}, {"gates", gates}};
}

CharacterizedGateSet gateset_from_json(const Json& j) {
  CharacterizedGateSet cgs;
  cgs.pair = pair_from_json(field(j, "pair"));
  cgs.error = error_from_json(field(j, "error"));
  cgs.labels = get<std::vector<std::string>>(j, "labels");
  const Json& gates = field(j, "gates");
  if (!gates.is_array()) parse_error("'gates' must be an array");
  for (const auto& g : gates) {
    const int index = get<int>(g, "index");
    if (index < 0 || index >= static_cast<int>(cgs.labels.size())) parse_error("gate index out of range");
    cgs.choi[index] = ChoiState{2, matrix_from_json(field(g, "choi"))};
    if (cgs.choi[index].data.rows() != 16 || cgs.choi[index].data.cols() != 16) {
      throw Error(ErrorCode::kInvalidDimension, "gate-set Choi states must be 16x16");
    }
  }
  return cgs;
}

Json to_json(const ReconstructionResult& r) {
  Json full = nullptr;
  if (r.full_trace_dist) full = *r.full_trace_dist;
  return {{"model", to_json(r.model)},
          {"raw_model", to_json(r.raw_model)},
          {"final_cost", r.final_cost},
          {"final_c1", r.final_c1},
          {"final_c2", r.final_c2},
          {"per_pair_trace_dist", pair_values(r.per_pair_trace_dist)},
          {"per_pair_trace_dist_raw", pair_values(r.per_pair_trace_dist_raw)},
          {"full_trace_dist", full},
          {"iterations", r.iterations},
          {"converged", r.converged},
          {"status", r.status},
          {"path", r.path},
          {"cost_history", r.cost_history}};
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    parse_error(std::string("invalid JSON: ") + e.what());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return parse_json(os.str());
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write '" + path + "'");
  out << text;
  if (!out) throw Error(ErrorCode::kIo, "write to '" + path + "' failed");
}

}  // namespace papa
