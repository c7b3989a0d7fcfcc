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

#include "papa/experiments.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <thread>

namespace papa {

namespace {

ExperimentKind kind_from_string(const std::string& s) {
  if (s == "fig2_bench") return ExperimentKind::kFig2Bench;
  if (s == "cr_sweep") return ExperimentKind::kCrSweep;
  if (s == "tol_sweep") return ExperimentKind::kTolSweep;
  if (s == "diff_map") return ExperimentKind::kDiffMap;
  if (s == "single") return ExperimentKind::kSingle;
  throw Error(ErrorCode::kParse, "unknown experiment kind '" + s + "'");
}

TomographyMode mode_from_string(const std::string& s) {
  if (s == "papa") return TomographyMode::kPapa;
  if (s == "papa_gst") return TomographyMode::kPapaGst;
  throw Error(ErrorCode::kParse, "unknown mode '" + s + "'");
}

TomographyMode default_mode(ExperimentKind kind) {
  return kind == ExperimentKind::kFig2Bench || kind == ExperimentKind::kTolSweep ? TomographyMode::kPapaGst
                                                                                 : TomographyMode::kPapa;
}

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> out;
  if (n == 1) return {lo};
  for (int i = 0; i < n; ++i) out.push_back(lo + (hi - lo) * i / (n - 1));
  return out;
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string error_kind(const ErrorModel& err) {
  return std::visit(
      [](const auto& e) -> std::string {
        using T = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<T, CoherentLocal>) return "coherent_local";
        if constexpr (std::is_same_v<T, Decoherence>) return "decoherence";
        return "cr_coherent";
      },
      err);
}

// Rejects papa_gst cases the gate-set pipeline cannot describe.
void check_gst_case(const CaseSpec& c) {
  if (c.mode != TomographyMode::kPapaGst) return;
  const GateSet gs = GateSet::standard();
  const CompatibilityReport compat = is_papa_gst_compatible(c.gate, gs);
  if (!compat.compatible) {
    std::ostringstream os;
    os << "case " << c.case_id << ": papa_gst mode needs every pair reduction of " << c.gate.label()
       << " to be a gate-set mixture; failing pairs:";
    for (QubitPair p : compat.failing_pairs()) os << ' ' << p.label();
    throw Error(ErrorCode::kUnsupported, os.str());
  }
  const ErrorToleranceReport tol = check_gst_error_tolerance(c.gate, c.error, gs);
  if (!tol.tolerable) {
    std::ostringstream os;
    os << "case " << c.case_id << ": error model " << error_model_label(c.error)
       << " is not tolerable for papa_gst; bootstrapped data departs from the process on pairs:";
    for (QubitPair p : tol.failing_pairs) os << ' ' << p.label();
    throw Error(ErrorCode::kUnsupported, os.str());
  }
}

double mean_pair_distance(const PapaModel& m, const NoisyProcess& truth, FactorOrder order) {
  const Superoperator s = build_superop(m, order);
  double total = 0.0;
  const auto pairs = all_pairs(m.n_qubits);
  for (QubitPair p : pairs) total += trace_distance(reduced_choi_from_superop(s, p), pairwise_qpt(truth, p));
  return total / static_cast<double>(pairs.size());
}

}  // namespace

std::string to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::kFig2Bench: return "fig2_bench";
    case ExperimentKind::kCrSweep: return "cr_sweep";
    case ExperimentKind::kTolSweep: return "tol_sweep";
    case ExperimentKind::kDiffMap: return "diff_map";
    case ExperimentKind::kSingle: return "single";
  }
  return "unknown";
}

std::string to_string(TomographyMode mode) { return mode == TomographyMode::kPapa ? "papa" : "papa_gst"; }

ExperimentConfig experiment_config_from_json(const Json& j) {
  if (!j.is_object()) throw Error(ErrorCode::kParse, "experiment config must be an object");
  ExperimentConfig cfg;
  try {
    cfg.kind = kind_from_string(j.value("kind", std::string("single")));
    cfg.mode = j.contains("mode") ? mode_from_string(j.at("mode").get<std::string>()) : default_mode(cfg.kind);
    if (j.contains("gate") && !j.at("gate").is_null()) cfg.gate = gate_from_json(j.at("gate"));
    if (j.contains("error") && !j.at("error").is_null()) cfg.error = error_from_json(j.at("error"));
    if (j.contains("solver")) cfg.solver = solver_config_from_json(j.at("solver"));
    cfg.output_path = j.value("output_path", std::string());
    cfg.seed = j.value("seed", std::uint64_t{0});
    cfg.spectator_samples = j.value("spectator_samples", 0);
    cfg.beta_points = j.value("beta_points", cfg.beta_points);
    cfg.phi_points = j.value("phi_points", cfg.phi_points);
    cfg.beta_min = j.value("beta_min", cfg.beta_min);
    cfg.beta_max = j.value("beta_max", cfg.beta_max);
    cfg.phi_min = j.value("phi_min", cfg.phi_min);
    cfg.phi_max = j.value("phi_max", cfg.phi_max);
    if (j.contains("tolerances")) cfg.tolerances = j.at("tolerances").get<std::vector<double>>();
    if (j.contains("pair")) cfg.pair = pair_from_json(j.at("pair"));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("experiment config: ") + e.what());
  }
  if (cfg.spectator_samples < 0) throw Error(ErrorCode::kInvalidArgument, "spectator_samples must be >= 0");
  return cfg;
}

Json to_json(const ExperimentConfig& cfg) {
  Json j = {{"kind", to_string(cfg.kind)},
            {"mode", to_string(cfg.mode)},
            {"solver", to_json(cfg.solver)},
            {"output_path", cfg.output_path},
            {"seed", cfg.seed},
            {"spectator_samples", cfg.spectator_samples},
            {"beta_points", cfg.beta_points},
            {"phi_points", cfg.phi_points},
            {"beta_min", cfg.beta_min},
            {"beta_max", cfg.beta_max},
            {"phi_min", cfg.phi_min},
            {"phi_max", cfg.phi_max},
            {"tolerances", cfg.tolerances},
            {"pair", to_json(cfg.pair)}};
  j["gate"] = cfg.gate ? to_json(*cfg.gate) : Json(nullptr);
  j["error"] = cfg.error ? to_json(*cfg.error) : Json(nullptr);
  return j;
}

std::vector<CaseSpec> fig2_cases(const SolverConfig& solver, TomographyMode mode) {
  const GateLayer identity = GateLayer::parse("III");
  const GateLayer xyx = GateLayer::parse("XYX");
  const GateLayer cnot = GateLayer::parse("CNOT12");
  return {
      {"i", identity, Decoherence{50e-6, 50e-6, 50e-9}, mode, solver},
      {"ii", identity, Decoherence{50e-6, 50e-6, 400e-9}, mode, solver},
      {"iii", xyx, Decoherence{50e-6, 50e-6, 50e-9}, mode, solver},
      {"iv", cnot, Decoherence{50e-6, 50e-6, 400e-9}, mode, solver},
      {"v", xyx, CoherentLocal{0.02}, mode, solver},
      {"vi", xyx, CoherentLocal{0.2}, mode, solver},
      {"vii", cnot, CoherentLocal{0.02}, mode, solver},
  };
}

std::vector<CaseSpec> expand_cases(const ExperimentConfig& cfg) {
  cfg.solver.validate();
  std::vector<CaseSpec> cases;
  switch (cfg.kind) {
    case ExperimentKind::kFig2Bench:
      cases = fig2_cases(cfg.solver, cfg.mode);
      break;
    case ExperimentKind::kCrSweep: {
      if (cfg.mode != TomographyMode::kPapa) {
        throw Error(ErrorCode::kUnsupported,
                    "cr_sweep uses standard papa; a cross-resonance gate with coherent error is not tolerable for "
                    "papa_gst");
      }
      if (cfg.beta_points < 1 || cfg.phi_points < 1) {
        throw Error(ErrorCode::kInvalidArgument, "cr_sweep grid needs at least one point per axis");
      }
      const GateLayer gate = cfg.gate.value_or(GateLayer::parse("CNOT12"));
      if (!gate.cnot || gate.cnot->control != 1 || gate.cnot->target != 2 || gate.n_qubits != 3) {
        throw Error(ErrorCode::kUnsupported, "cr_sweep models a CNOT with control 1 and target 2 on three qubits");
      }
      const auto betas = linspace(cfg.beta_min, cfg.beta_max, cfg.beta_points);
      const auto phis = linspace(cfg.phi_min, cfg.phi_max, cfg.phi_points);
      for (size_t b = 0; b < betas.size(); ++b)
        for (size_t p = 0; p < phis.size(); ++p) {
          std::ostringstream id;
          id << "cr_b" << b << "_p" << p;
          cases.push_back({id.str(), gate, CRCoherent{betas[b], phis[p]}, cfg.mode, cfg.solver});
        }
      break;
    }
    case ExperimentKind::kTolSweep: {
      if (cfg.tolerances.empty()) throw Error(ErrorCode::kInvalidArgument, "tol_sweep needs tolerances");
      const GateLayer gate = cfg.gate.value_or(GateLayer::parse("CNOT12"));
      std::vector<std::pair<std::string, ErrorModel>> variants;
      if (cfg.error) {
        variants.push_back({error_kind(*cfg.error), *cfg.error});
      } else {
        variants.push_back({"coherent", CoherentLocal{0.02}});
        variants.push_back({"decoherence", Decoherence{50e-6, 50e-6, 400e-9}});
      }
      for (const auto& [name, err] : variants)
        for (double tol : cfg.tolerances) {
          SolverConfig solver = cfg.solver;
          solver.eps_tol = tol;
          char id[64];
          std::snprintf(id, sizeof id, "tol_%s_%.0e", name.c_str(), tol);
          cases.push_back({id, gate, err, cfg.mode, solver});
        }
      break;
    }
    case ExperimentKind::kDiffMap:
    case ExperimentKind::kSingle: {
      if (!cfg.gate) throw Error(ErrorCode::kInvalidArgument, to_string(cfg.kind) + " config needs a gate");
      if (!cfg.error) throw Error(ErrorCode::kInvalidArgument, to_string(cfg.kind) + " config needs an error model");
      cases.push_back({to_string(cfg.kind), *cfg.gate, *cfg.error, cfg.mode, cfg.solver});
      break;
    }
  }
  for (const auto& c : cases) {
    c.gate.validate();
    validate_error_model(c.error);
    c.solver.validate();
    check_gst_case(c);
  }
  return cases;
}

TomographyData case_tomography(const CaseSpec& c, const NoisyProcess& truth, std::uint64_t seed,
                               int spectator_samples) {
  if (c.mode == TomographyMode::kPapaGst) return gst_tomography(c.gate, c.error, GateSet::standard());
  return standard_tomography(truth, spectator_samples, seed);
}

CaseOutcome run_case(const CaseSpec& c, std::uint64_t seed, int spectator_samples) {
  const auto start = std::chrono::steady_clock::now();
  CaseOutcome out;
  ResultRecord& rec = out.record;
  rec.case_id = c.case_id;
  rec.gate = c.gate.label();
  rec.error = c.error;
  rec.mode = to_string(c.mode);
  rec.eps_tol = c.solver.eps_tol;
  const double nan = std::nan("");
  try {
    const NoisyProcess truth = simulate_noisy_process(c.gate, c.error);
    out.data = case_tomography(c, truth, seed, spectator_samples);
    const PapaModel init = ideal_initial_guess(c.gate, c.gate.n_qubits);
    const FactorOrder order = c.solver.factor_order;
    rec.td_full_ideal = full_trace_distance(init, truth.superop, order);
    rec.mean_td_pairs_ideal = mean_pair_distance(init, truth, order);
    ReconstructionResult result = solve(out.data, init, c.solver);
    rec.td_full_papa = full_trace_distance(result.model, truth.superop, order);
    rec.td_full_papa_raw = full_trace_distance(result.raw_model, truth.superop, order);
    rec.mean_td_pairs_papa = mean_pair_distance(result.model, truth, order);
    result.full_trace_dist = rec.td_full_papa;
    rec.iterations = result.iterations;
    rec.converged = result.converged;
    rec.final_cost = result.final_cost;
    rec.status = "ok";
    out.result = std::move(result);
  } catch (const Error& e) {
    rec.td_full_papa = rec.td_full_papa_raw = rec.mean_td_pairs_papa = nan;
    rec.final_cost = nan;
    rec.converged = false;
    rec.status = e.what();
  }
  rec.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

std::vector<CaseOutcome> run_cases(const std::vector<CaseSpec>& cases, std::uint64_t seed, int spectator_samples,
                                   int jobs) {
  std::vector<CaseOutcome> out(cases.size());
  const int workers = std::max(1, std::min<int>(jobs, static_cast<int>(cases.size())));
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i = next++; i < cases.size(); i = next++) out[i] = run_case(cases[i], seed + i, spectator_samples);
  };
  if (workers == 1) {
    worker();
    return out;
  }
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  return out;
}

namespace {

std::vector<ResultRecord> records_of(const std::vector<CaseOutcome>& outcomes) {
  std::vector<ResultRecord> out;
  for (const auto& o : outcomes) out.push_back(o.record);
  return out;
}

void require_kind(const ExperimentConfig& cfg, ExperimentKind kind) {
  if (cfg.kind != kind) {
    throw Error(ErrorCode::kInvalidArgument, "config kind is " + to_string(cfg.kind) + ", expected " + to_string(kind));
  }
}

}  // namespace

std::vector<ResultRecord> run_fig2_bench(const ExperimentConfig& cfg, int jobs) {
  require_kind(cfg, ExperimentKind::kFig2Bench);
  return records_of(run_cases(expand_cases(cfg), cfg.seed, cfg.spectator_samples, jobs));
}

std::vector<ResultRecord> run_cr_sweep(const ExperimentConfig& cfg, int jobs) {
  require_kind(cfg, ExperimentKind::kCrSweep);
  return records_of(run_cases(expand_cases(cfg), cfg.seed, cfg.spectator_samples, jobs));
}

std::vector<ResultRecord> run_tol_sweep(const ExperimentConfig& cfg, int jobs) {
  require_kind(cfg, ExperimentKind::kTolSweep);
  return records_of(run_cases(expand_cases(cfg), cfg.seed, cfg.spectator_samples, jobs));
}

ResultRecord run_single(const ExperimentConfig& cfg) {
  require_kind(cfg, ExperimentKind::kSingle);
  return run_cases(expand_cases(cfg), cfg.seed, cfg.spectator_samples, 1).front().record;
}

RMatrix diff_map_from_model(const PapaModel& model, const TomographyData& data, QubitPair pair, FactorOrder order) {
  validate_pair(pair, model.n_qubits);
  return (data.at(pair).data - reduced_choi_of_model(model, pair, order).data).cwiseAbs();
}

DiffMap run_diff_map(const ExperimentConfig& cfg) {
  require_kind(cfg, ExperimentKind::kDiffMap);
  const auto cases = expand_cases(cfg);
  validate_pair(cfg.pair, cases.front().gate.n_qubits);
  CaseOutcome o = run_case(cases.front(), cfg.seed, cfg.spectator_samples);
  if (!o.result) throw Error(ErrorCode::kDiverged, "diff_map reconstruction failed: " + o.record.status);
  DiffMap map{o.record, cfg.pair, {}, o.result->model, o.data};
  map.magnitude = diff_map_from_model(map.model, map.data, cfg.pair, cfg.solver.factor_order);
  return map;
}

std::string records_to_csv(const std::vector<ResultRecord>& records) {
  std::ostringstream os;
  os << "schema_version,case_id,gate,error_kind,phi,t1,t2,duration,beta,phi_zz,mode,eps_tol,td_full_papa,"
        "td_full_ideal,mean_td_pairs_papa,mean_td_pairs_ideal,td_full_papa_raw,iterations,converged,final_cost,"
        "status,wall_time\n";
  for (const auto& r : records) {
    double phi = 0, t1 = 0, t2 = 0, duration = 0, beta = 0, phi_zz = 0;
    if (const auto* e = std::get_if<CoherentLocal>(&r.error)) phi = e->phi;
    if (const auto* e = std::get_if<Decoherence>(&r.error)) {
      t1 = e->t1;
      t2 = e->t2;
      duration = e->duration;
    }
    if (const auto* e = std::get_if<CRCoherent>(&r.error)) {
      beta = e->beta;
      phi_zz = e->phi_zz;
    }
    os << kCsvSchemaVersion << ',' << csv_field(r.case_id) << ',' << csv_field(r.gate) << ',' << error_kind(r.error)
       << ',' << format_number(phi) << ',' << format_number(t1) << ',' << format_number(t2) << ','
       << format_number(duration) << ',' << format_number(beta) << ',' << format_number(phi_zz) << ',' << r.mode
       << ',' << format_number(r.eps_tol) << ',' << format_number(r.td_full_papa) << ','
       << format_number(r.td_full_ideal) << ',' << format_number(r.mean_td_pairs_papa) << ','
       << format_number(r.mean_td_pairs_ideal) << ',' << format_number(r.td_full_papa_raw) << ',' << r.iterations
       << ',' << (r.converged ? "true" : "false") << ',' << format_number(r.final_cost) << ','
       << csv_field(r.status) << ',' << format_number(r.wall_time) << '\n';
  }
  return os.str();
}

Json records_to_json(const std::vector<ResultRecord>& records) {
  Json out = Json::array();
  auto num = [](double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); };
  for (const auto& r : records) {
    out.push_back({{"case_id", r.case_id},
                   {"gate", r.gate},
                   {"error", to_json(r.error)},
                   {"mode", r.mode},
                   {"eps_tol", r.eps_tol},
                   {"td_full_papa", num(r.td_full_papa)},
                   {"td_full_ideal", num(r.td_full_ideal)},
                   {"mean_td_pairs_papa", num(r.mean_td_pairs_papa)},
                   {"mean_td_pairs_ideal", num(r.mean_td_pairs_ideal)},
                   {"td_full_papa_raw", num(r.td_full_papa_raw)},
                   {"iterations", r.iterations},
                   {"converged", r.converged},
                   {"final_cost", num(r.final_cost)},
                   {"status", r.status},
                   {"wall_time", r.wall_time}});
  }
  return out;
}

std::string matrix_to_csv(const RMatrix& m) {
  std::ostringstream os;
  for (Eigen::Index c = 0; c < m.cols(); ++c) os << (c ? "," : "") << "c" << c;
  os << '\n';
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) os << (c ? "," : "") << format_number(m(r, c));
    os << '\n';
  }
  return os.str();
}

int batch_exit_code(const std::vector<ResultRecord>& records) {
  for (const auto& r : records)
    if (!r.converged) return 2;
  return 0;
}

ExperimentOutput run_experiment(const ExperimentConfig& cfg, int jobs) {
  ExperimentOutput out;
  if (cfg.kind == ExperimentKind::kDiffMap) {
    out.diff_map = run_diff_map(cfg);
    out.records.push_back(out.diff_map->record);
    return out;
  }
  out.records = records_of(run_cases(expand_cases(cfg), cfg.seed, cfg.spectator_samples, jobs));
  return out;
}

Json to_json(const ExperimentOutput& out) {
  Json j = {{"schema_version", kCsvSchemaVersion}, {"records", records_to_json(out.records)}};
  if (out.diff_map) {
    j["diff_map"] = {{"pair", to_json(out.diff_map->pair)},
                     {"magnitude", std::vector<std::vector<double>>()},
                     {"model", to_json(out.diff_map->model)},
                     {"data", to_json(out.diff_map->data)}};
    auto& rows = j["diff_map"]["magnitude"];
    for (Eigen::Index r = 0; r < out.diff_map->magnitude.rows(); ++r) {
      std::vector<double> row(out.diff_map->magnitude.cols());
      for (Eigen::Index c = 0; c < out.diff_map->magnitude.cols(); ++c) row[c] = out.diff_map->magnitude(r, c);
      rows.push_back(row);
    }
  }
  return j;
}

}  // namespace papa
