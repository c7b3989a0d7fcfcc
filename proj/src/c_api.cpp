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

#include "papa/papa.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <stdexcept>
#include <string>

#include "papa/experiments.hpp"
#include "papa/gst_decomposition.hpp"
#include "papa/reconstructor.hpp"
#include "papa/serialization.hpp"

struct papa_process {
  papa::NoisyProcess value;
};
struct papa_tomography {
  papa::TomographyData value;
};
struct papa_model {
  papa::PapaModel value;
};
struct papa_result {
  papa::ReconstructionResult value;
};

namespace {

thread_local std::string last_error;

papa_status fail(papa_status status, const std::string& message) {
  last_error = message;
  return status;
}

papa_status status_of(papa::ErrorCode code) {
  const int value = static_cast<int>(code);
  if (value >= PAPA_ERR_INVALID_ARGUMENT && value <= PAPA_ERR_IO) return static_cast<papa_status>(value);
  return PAPA_ERR_INTERNAL;
}

// Raised for a null input pointer discovered inside a guarded body.
struct NullArgument : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

template <typename Fn>
papa_status guarded(Fn&& fn) {
  try {
    fn();
    last_error.clear();
    return PAPA_OK;
  } catch (const NullArgument& e) {
    return fail(PAPA_ERR_NULL_POINTER, e.what());
  } catch (const papa::Error& e) {
    return fail(status_of(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(PAPA_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(PAPA_ERR_INTERNAL, e.what());
  }
}

void require(const void* p, const char* name) {
  if (!p) throw NullArgument(std::string(name) + " must not be null");
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void emit(char** out, const papa::Json& j) {
  if (out) *out = copy_string(j.dump());
}

papa::GateLayer parse_gate(const char* gate) {
  require(gate, "gate");
  const std::string text(gate);
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') return papa::gate_from_json(papa::parse_json(text));
  return papa::GateLayer::parse(text);
}

papa::ErrorModel parse_error_model(const char* error_json) {
  require(error_json, "error_json");
  return papa::error_from_json(papa::parse_json(error_json));
}

papa::GateLayer gate_field(const papa::Json& j) {
  if (!j.contains("gate")) throw papa::Error(papa::ErrorCode::kInvalidArgument, "config needs a gate");
  return papa::gate_from_json(j.at("gate"));
}

}  // namespace

extern "C" {

const char* papa_version(void) { return "1.0.0"; }

const char* papa_last_error(void) { return last_error.c_str(); }

const char* papa_status_name(papa_status status) {
  switch (status) {
    case PAPA_OK: return "ok";
    case PAPA_ERR_INVALID_ARGUMENT: return "invalid argument";
    case PAPA_ERR_INVALID_DIMENSION: return "invalid dimension";
    case PAPA_ERR_INVALID_KRAUS: return "invalid Kraus set";
    case PAPA_ERR_OUT_OF_RANGE: return "out of range";
    case PAPA_ERR_DEGENERATE_INPUT: return "degenerate input";
    case PAPA_ERR_NOT_DECOMPOSABLE: return "not decomposable";
    case PAPA_ERR_UNSUPPORTED: return "unsupported";
    case PAPA_ERR_DIVERGED: return "diverged";
    case PAPA_ERR_PARSE: return "parse error";
    case PAPA_ERR_IO: return "i/o error";
    case PAPA_ERR_NULL_POINTER: return "null pointer";
    case PAPA_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void papa_string_free(char* s) { std::free(s); }

papa_status papa_process_simulate(const char* gate, const char* error_json, papa_process** out) {
  if (!out) return fail(PAPA_ERR_NULL_POINTER, "out must not be null");
  return guarded([&] {
    const papa::GateLayer g = parse_gate(gate);
    *out = new papa_process{papa::simulate_noisy_process(g, parse_error_model(error_json))};
  });
}

papa_status papa_process_n_qubits(const papa_process* p, int* out) {
  if (!p || !out) return fail(PAPA_ERR_NULL_POINTER, "process and out must not be null");
  *out = p->value.superop.n_qubits;
  return PAPA_OK;
}

papa_status papa_process_to_json(const papa_process* p, char** out_json) {
  if (!p || !out_json) return fail(PAPA_ERR_NULL_POINTER, "process and out_json must not be null");
  return guarded([&] {
    emit(out_json, {{"gate", papa::to_json(p->value.gate)},
                    {"error", papa::to_json(p->value.error)},
                    {"superop", papa::to_json(p->value.superop)}});
  });
}

papa_status papa_process_pairwise_qpt(const papa_process* p, int k, int l, char** out_json) {
  if (!p || !out_json) return fail(PAPA_ERR_NULL_POINTER, "process and out_json must not be null");
  return guarded([&] { emit(out_json, papa::to_json(papa::pairwise_qpt(p->value, {k, l}))); });
}

void papa_process_free(papa_process* p) { delete p; }

papa_status papa_tomography_from_process(const papa_process* p, int spectator_samples, uint64_t seed,
                                         papa_tomography** out) {
  if (!p || !out) return fail(PAPA_ERR_NULL_POINTER, "process and out must not be null");
  return guarded([&] { *out = new papa_tomography{papa::standard_tomography(p->value, spectator_samples, seed)}; });
}

papa_status papa_tomography_from_gateset(const char* gate, const char* error_json, papa_tomography** out) {
  if (!out) return fail(PAPA_ERR_NULL_POINTER, "out must not be null");
  return guarded([&] {
    const papa::GateLayer g = parse_gate(gate);
    *out = new papa_tomography{papa::gst_tomography(g, parse_error_model(error_json), papa::GateSet::standard())};
  });
}

papa_status papa_tomography_from_json(const char* json, papa_tomography** out) {
  if (!json || !out) return fail(PAPA_ERR_NULL_POINTER, "json and out must not be null");
  return guarded([&] { *out = new papa_tomography{papa::tomography_from_json(papa::parse_json(json))}; });
}

papa_status papa_tomography_to_json(const papa_tomography* t, char** out_json) {
  if (!t || !out_json) return fail(PAPA_ERR_NULL_POINTER, "tomography and out_json must not be null");
  return guarded([&] { emit(out_json, papa::to_json(t->value)); });
}

void papa_tomography_free(papa_tomography* t) { delete t; }

papa_status papa_model_ideal_guess(const char* gate, papa_model** out) {
  if (!out) return fail(PAPA_ERR_NULL_POINTER, "out must not be null");
  return guarded([&] {
    const papa::GateLayer g = parse_gate(gate);
    *out = new papa_model{papa::ideal_initial_guess(g, g.n_qubits)};
  });
}

papa_status papa_model_from_json(const char* json, papa_model** out) {
  if (!json || !out) return fail(PAPA_ERR_NULL_POINTER, "json and out must not be null");
  return guarded([&] { *out = new papa_model{papa::model_from_json(papa::parse_json(json))}; });
}

papa_status papa_model_to_json(const papa_model* m, char** out_json) {
  if (!m || !out_json) return fail(PAPA_ERR_NULL_POINTER, "model and out_json must not be null");
  return guarded([&] { emit(out_json, papa::to_json(m->value)); });
}

papa_status papa_model_full_trace_distance(const papa_model* m, const papa_process* truth, double* out) {
  if (!m || !truth || !out) return fail(PAPA_ERR_NULL_POINTER, "model, truth and out must not be null");
  return guarded([&] { *out = papa::full_trace_distance(m->value, truth->value.superop); });
}

void papa_model_free(papa_model* m) { delete m; }

papa_status papa_solve(const papa_tomography* data, const papa_model* init, const char* solver_json,
                       papa_result** out) {
  if (!data || !init || !out) return fail(PAPA_ERR_NULL_POINTER, "data, init and out must not be null");
  return guarded([&] {
    const papa::SolverConfig cfg =
        solver_json ? papa::solver_config_from_json(papa::parse_json(solver_json)) : papa::SolverConfig{};
    *out = new papa_result{papa::solve(data->value, init->value, cfg)};
  });
}

papa_status papa_result_model(const papa_result* r, papa_model** out) {
  if (!r || !out) return fail(PAPA_ERR_NULL_POINTER, "result and out must not be null");
  return guarded([&] { *out = new papa_model{r->value.model}; });
}

papa_status papa_result_converged(const papa_result* r, int* out) {
  if (!r || !out) return fail(PAPA_ERR_NULL_POINTER, "result and out must not be null");
  *out = r->value.converged ? 1 : 0;
  return PAPA_OK;
}

papa_status papa_result_to_json(const papa_result* r, char** out_json) {
  if (!r || !out_json) return fail(PAPA_ERR_NULL_POINTER, "result and out_json must not be null");
  return guarded([&] { emit(out_json, papa::to_json(r->value)); });
}

void papa_result_free(papa_result* r) { delete r; }

papa_status papa_simulate_run(const char* config_json, int64_t seed_override, char** out_json) {
  if (!config_json || !out_json) return fail(PAPA_ERR_NULL_POINTER, "config_json and out_json must not be null");
  return guarded([&] {
    const papa::Json cfg = papa::parse_json(config_json);
    if (!cfg.is_object()) throw papa::Error(papa::ErrorCode::kParse, "simulate config must be an object");
    const papa::GateLayer gate = gate_field(cfg);
    if (!cfg.contains("error")) throw papa::Error(papa::ErrorCode::kInvalidArgument, "config needs an error model");
    const papa::ErrorModel err = papa::error_from_json(cfg.at("error"));
    const std::string mode = cfg.value("mode", std::string("papa"));
    std::uint64_t seed = cfg.value("seed", std::uint64_t{0});
    if (seed_override >= 0) seed = static_cast<std::uint64_t>(seed_override);
    const int samples = cfg.value("spectator_samples", 0);

    papa::CaseSpec c{"simulate", gate, err, papa::TomographyMode::kPapa, {}};
    if (mode == "papa_gst") {
      c.mode = papa::TomographyMode::kPapaGst;
    } else if (mode != "papa") {
      throw papa::Error(papa::ErrorCode::kParse, "unknown mode '" + mode + "'");
    }
    papa::ExperimentConfig single;
    single.gate = gate;
    single.error = err;
    single.mode = c.mode;
    papa::expand_cases(single);  // rejects incompatible papa_gst requests
    const papa::NoisyProcess truth = papa::simulate_noisy_process(gate, err);
    const papa::TomographyData data = papa::case_tomography(c, truth, seed, samples);
    emit(out_json, {{"gate", papa::to_json(gate)},
                    {"error", papa::to_json(err)},
                    {"mode", mode},
                    {"seed", seed},
                    {"process", papa::to_json(truth.superop)},
                    {"tomography", papa::to_json(data)}});
  });
}

papa_status papa_reconstruct_run(const char* config_json, char** out_json, int* converged) {
  if (!config_json || !out_json) return fail(PAPA_ERR_NULL_POINTER, "config_json and out_json must not be null");
  return guarded([&] {
    const papa::Json cfg = papa::parse_json(config_json);
    if (!cfg.is_object() || !cfg.contains("tomography")) {
      throw papa::Error(papa::ErrorCode::kInvalidArgument, "reconstruct config needs tomography data");
    }
    const papa::TomographyData data = papa::tomography_from_json(cfg.at("tomography"));
    papa::PapaModel init;
    if (cfg.contains("init_model")) {
      init = papa::model_from_json(cfg.at("init_model"));
    } else {
      const papa::GateLayer gate = gate_field(cfg);
      init = papa::ideal_initial_guess(gate, gate.n_qubits);
    }
    const papa::SolverConfig solver =
        cfg.contains("solver") ? papa::solver_config_from_json(cfg.at("solver")) : papa::SolverConfig{};
    papa::ReconstructionResult result = papa::solve(data, init, solver);
    papa::Json out = papa::to_json(result);
    if (cfg.contains("process")) {
      const papa::Superoperator truth = papa::superop_from_json(cfg.at("process"));
      out["full_trace_dist"] = papa::full_trace_distance(result.model, truth, solver.factor_order);
      out["full_trace_dist_ideal"] = papa::full_trace_distance(init, truth, solver.factor_order);
    }
    emit(out_json, out);
    if (converged) *converged = result.converged ? 1 : 0;
  });
}

papa_status papa_experiment_run(const char* config_json, const char* expected_kind, int jobs, int64_t seed_override,
                                char** out_json, char** out_csv, int* exit_code) {
  if (!config_json) return fail(PAPA_ERR_NULL_POINTER, "config_json must not be null");
  return guarded([&] {
    papa::Json j = papa::parse_json(config_json);
    if (!j.is_object()) throw papa::Error(papa::ErrorCode::kParse, "experiment config must be an object");
    if (expected_kind) {
      if (!j.contains("kind")) j["kind"] = expected_kind;
      if (j.at("kind") != expected_kind) {
        throw papa::Error(papa::ErrorCode::kInvalidArgument,
                          "config kind " + j.at("kind").dump() + " does not match " + expected_kind);
      }
    }
    papa::ExperimentConfig cfg = papa::experiment_config_from_json(j);
    if (seed_override >= 0) cfg.seed = static_cast<std::uint64_t>(seed_override);
    const papa::ExperimentOutput result = papa::run_experiment(cfg, jobs < 1 ? 1 : jobs);
    emit(out_json, papa::to_json(result));
    if (out_csv) {
      *out_csv = copy_string(result.diff_map ? papa::matrix_to_csv(result.diff_map->magnitude)
                                             : papa::records_to_csv(result.records));
    }
    if (exit_code) *exit_code = papa::batch_exit_code(result.records);
  });
}

papa_status papa_experiment_output_path(const char* config_json, char** out_path) {
  if (!config_json || !out_path) return fail(PAPA_ERR_NULL_POINTER, "config_json and out_path must not be null");
  return guarded([&] {
    const papa::Json j = papa::parse_json(config_json);
    if (!j.is_object()) throw papa::Error(papa::ErrorCode::kParse, "config must be an object");
    const auto it = j.find("output_path");
    if (it != j.end() && !it->is_string()) throw papa::Error(papa::ErrorCode::kParse, "output_path must be a string");
    *out_path = copy_string(it == j.end() ? std::string() : it->get<std::string>());
  });
}

}  // extern "C"
