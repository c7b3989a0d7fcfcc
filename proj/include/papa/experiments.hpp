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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "papa/gate_simulator.hpp"
#include "papa/gates.hpp"
#include "papa/reconstructor.hpp"
#include "papa/serialization.hpp"

namespace papa {

enum class ExperimentKind { kFig2Bench, kCrSweep, kTolSweep, kDiffMap, kSingle };
enum class TomographyMode { kPapa, kPapaGst };

std::string to_string(ExperimentKind kind);
std::string to_string(TomographyMode mode);

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::kSingle;
  std::optional<GateLayer> gate;
  std::optional<ErrorModel> error;
  TomographyMode mode = TomographyMode::kPapa;
  SolverConfig solver;
  std::string output_path;
  std::uint64_t seed = 0;
  /// Spectator input states drawn per pair in papa mode; 0 means the exact
  /// maximally mixed average.
  int spectator_samples = 0;

  // cr_sweep grid, endpoints included.
  int beta_points = 4;
  int phi_points = 4;
  double beta_min = 0.19634954084936207;  // pi/16
  double beta_max = 0.39269908169872414;  // pi/8
  double phi_min = 1e-3;
  double phi_max = 4e-3;

  // tol_sweep grid.
  std::vector<double> tolerances = {1e-4, 1e-5, 1e-6, 1e-7, 1e-8};

  // diff_map pair.
  QubitPair pair{1, 2};
};

struct CaseSpec {
  std::string case_id;
  GateLayer gate;
  ErrorModel error;
  TomographyMode mode = TomographyMode::kPapa;
  SolverConfig solver;
};

struct ResultRecord {
  std::string case_id;
  std::string gate;
  ErrorModel error;
  std::string mode;
  double eps_tol = 0.0;
  double td_full_papa = 0.0;
  double td_full_ideal = 0.0;
  double mean_td_pairs_papa = 0.0;
  double mean_td_pairs_ideal = 0.0;
  double td_full_papa_raw = 0.0;
  int iterations = 0;
  bool converged = false;
  double final_cost = 0.0;
  /// "ok" or the error that stopped this case.
  std::string status;
  double wall_time = 0.0;
};

struct CaseOutcome {
  ResultRecord record;
  TomographyData data;
  std::optional<ReconstructionResult> result;
};

inline constexpr int kCsvSchemaVersion = 1;

ExperimentConfig experiment_config_from_json(const Json& j);
Json to_json(const ExperimentConfig& cfg);

/// The seven benchmark processes: identity at 50 ns and 400 ns, X(x)Y(x)X at
/// 50 ns and CNOT12 at 400 ns under T1 = T2 = 50 us decoherence, then
/// X(x)Y(x)X with phi = 0.02 and 0.2 and CNOT12 with phi = 0.02.
std::vector<CaseSpec> fig2_cases(const SolverConfig& solver, TomographyMode mode = TomographyMode::kPapaGst);

/// Concrete cases for a config in output order. Throws kInvalidArgument for
/// missing kind-specific fields and kUnsupported for papa_gst cases whose gate
/// or error model rules out gate-set bootstrapping.
std::vector<CaseSpec> expand_cases(const ExperimentConfig& cfg);

/// Simulates the data a case would use (gate-set bootstrapped or direct).
TomographyData case_tomography(const CaseSpec& c, const NoisyProcess& truth, std::uint64_t seed,
                               int spectator_samples);

/// Solver failures are reported in the record status, not thrown.
CaseOutcome run_case(const CaseSpec& c, std::uint64_t seed, int spectator_samples = 0);

/// Runs cases on up to jobs threads; results keep input order.
std::vector<CaseOutcome> run_cases(const std::vector<CaseSpec>& cases, std::uint64_t seed, int spectator_samples,
                                   int jobs);

std::vector<ResultRecord> run_fig2_bench(const ExperimentConfig& cfg, int jobs = 1);
std::vector<ResultRecord> run_cr_sweep(const ExperimentConfig& cfg, int jobs = 1);
std::vector<ResultRecord> run_tol_sweep(const ExperimentConfig& cfg, int jobs = 1);
ResultRecord run_single(const ExperimentConfig& cfg);

/// Entry-wise |sigma_S - rho_S| on cfg.pair for the reconstructed model.
struct DiffMap {
  ResultRecord record;
  QubitPair pair;
  RMatrix magnitude;
  PapaModel model;
  TomographyData data;
};
DiffMap run_diff_map(const ExperimentConfig& cfg);
RMatrix diff_map_from_model(const PapaModel& model, const TomographyData& data, QubitPair pair,
                            FactorOrder order = FactorOrder::kFirstPairLast);

std::string records_to_csv(const std::vector<ResultRecord>& records);
Json records_to_json(const std::vector<ResultRecord>& records);
std::string matrix_to_csv(const RMatrix& m);

/// 0 when every case converged, 2 otherwise.
int batch_exit_code(const std::vector<ResultRecord>& records);

/// Runs any experiment kind; diff_map yields one record. The returned JSON
/// holds the records and, for diff_map, the matrix.
struct ExperimentOutput {
  std::vector<ResultRecord> records;
  std::optional<DiffMap> diff_map;
};
ExperimentOutput run_experiment(const ExperimentConfig& cfg, int jobs = 1);
Json to_json(const ExperimentOutput& out);

}  // namespace papa
