/*
 * Copyright 2026 The glmturbo Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include "bench.hpp"

#include <atomic>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>
#include <tuple>

#include <json.hpp>

#include "errors.hpp"
#include "rng.hpp"
#include "text_io.hpp"

namespace glmt {

namespace {

using nlohmann::json;

// Stream tags for per-trial seed splitting.
enum : std::uint64_t { kTagMatrix = 11, kTagSignal = 12 };

std::uint64_t kappa_bits(double kappa) { return std::bit_cast<std::uint64_t>(kappa); }

}  // namespace

void ExperimentConfig::validate() const {
  if (n == 0 || m == 0) throw ContractError("ExperimentConfig: N and M must be >= 1");
  if (!(rho > 0.0) || rho > 1.0) throw ContractError("ExperimentConfig: rho must be in (0, 1]");
  if (trials < 1) throw ContractError("ExperimentConfig: trials must be >= 1");
  if (t_max < 1 || iter_slm < 1)
    throw ContractError("ExperimentConfig: T_max and Iter_SLM must be >= 1");
  if (kappas.empty()) throw ContractError("ExperimentConfig: kappas must be non-empty");
  for (double k : kappas)
    if (!(k >= 1.0) || !std::isfinite(k))
      throw ContractError("ExperimentConfig: every kappa must be >= 1");
  if (algorithms.empty()) throw ContractError("ExperimentConfig: algorithms must be non-empty");
  if (!std::isfinite(snr_db)) throw ContractError("ExperimentConfig: snr_db must be finite");
  if (!(damping > 0.0) || damping > 1.0 || !(amp_inner_damping > 0.0) ||
      amp_inner_damping > 1.0)
    throw ContractError("ExperimentConfig: damping must be in (0, 1]");
}

GlmLoopConfig ExperimentConfig::loop_config(Solver solver) const {
  GlmLoopConfig lc;
  lc.t_max = t_max;
  lc.iter_slm = iter_slm;
  lc.init_z_ext_mean = init_z_ext_mean;
  lc.init_z_ext_var = init_z_ext_var;
  lc.damping = damping;
  lc.amp_inner_damping = amp_inner_damping;
  lc.solver = solver;
  lc.sbl_reset_alpha = sbl_reset_alpha;
  lc.sbl_per_component_variance = sbl_per_component_variance;
  lc.sbl_hyper_a = sbl_hyper_a;
  lc.sbl_hyper_b = sbl_hyper_b;
  return lc;
}

ExperimentConfig ExperimentConfig::from_json_text(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("config root must be a JSON object");

  ExperimentConfig cfg;
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "N") cfg.n = value.get<std::size_t>();
      else if (key == "M") cfg.m = value.get<std::size_t>();
      else if (key == "rho") cfg.rho = value.get<double>();
      else if (key == "slab_var") cfg.slab_var = value.get<double>();
      else if (key == "snr_db") cfg.snr_db = value.get<double>();
      else if (key == "kappas") cfg.kappas = value.get<std::vector<double>>();
      else if (key == "algorithms") {
        cfg.algorithms.clear();
        for (const auto& name : value) cfg.algorithms.push_back(parse_solver(name.get<std::string>()));
      } else if (key == "trials") cfg.trials = value.get<int>();
      else if (key == "T_max") cfg.t_max = value.get<int>();
      else if (key == "Iter_SLM") cfg.iter_slm = value.get<int>();
      else if (key == "master_seed") cfg.master_seed = value.get<std::uint64_t>();
      else if (key == "output_path") cfg.output_path = value.get<std::string>();
      else if (key == "damping") cfg.damping = value.get<double>();
      else if (key == "amp_inner_damping") cfg.amp_inner_damping = value.get<double>();
      else if (key == "init_z_ext_mean") cfg.init_z_ext_mean = value.get<double>();
      else if (key == "init_z_ext_var") cfg.init_z_ext_var = value.get<double>();
      else if (key == "average_in_db") cfg.average_in_db = value.get<bool>();
      else if (key == "sbl_reset_alpha") cfg.sbl_reset_alpha = value.get<bool>();
      else if (key == "sbl_per_component_variance")
        cfg.sbl_per_component_variance = value.get<bool>();
      else if (key == "sbl_hyper_a") cfg.sbl_hyper_a = value.get<double>();
      else if (key == "sbl_hyper_b") cfg.sbl_hyper_b = value.get<double>();
      else throw ParseError("unknown config key '" + key + "'");
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("config field has wrong type: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig ExperimentConfig::from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json_text(ss.str());
}

std::string ExperimentConfig::to_json_text() const {
  json j;
  j["N"] = n;
  j["M"] = m;
  j["rho"] = rho;
  if (slab_var > 0.0) j["slab_var"] = slab_var;
  j["snr_db"] = snr_db;
  j["kappas"] = kappas;
  std::vector<std::string> names;
  names.reserve(algorithms.size());
  for (Solver s : algorithms) names.emplace_back(solver_name(s));
  j["algorithms"] = names;
  j["trials"] = trials;
  j["T_max"] = t_max;
  j["Iter_SLM"] = iter_slm;
  j["master_seed"] = master_seed;
  if (!output_path.empty()) j["output_path"] = output_path;
  j["damping"] = damping;
  j["init_z_ext_var"] = init_z_ext_var;
  j["average_in_db"] = average_in_db;
  return j.dump(2);
}

MatrixSpec trial_matrix_spec(const ExperimentConfig& cfg, double kappa, int trial) {
  MatrixSpec ms;
  ms.m = cfg.m;
  ms.n = cfg.n;
  ms.kappa = kappa;
  ms.seed = split_seed(cfg.master_seed, kappa_bits(kappa), static_cast<std::uint64_t>(trial),
                       kTagMatrix);
  return ms;
}

SignalSpec trial_signal_spec(const ExperimentConfig& cfg, double kappa, int trial) {
  SignalSpec ss;
  ss.n = cfg.n;
  ss.rho = cfg.rho;
  ss.slab_var = cfg.slab_var;
  ss.seed = split_seed(cfg.master_seed, kappa_bits(kappa), static_cast<std::uint64_t>(trial),
                       kTagSignal);
  return ss;
}

int resolve_thread_count(int requested) {
  if (const char* env = std::getenv("GLM_TURBO_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<int>(v);
  }
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

namespace {

std::vector<TrialRecord> run_cell(const ExperimentConfig& cfg, double kappa, int trial) {
  const OneBitProblem instance =
      make_onebit_problem(trial_matrix_spec(cfg, kappa, trial),
                          trial_signal_spec(cfg, kappa, trial), cfg.snr_db);
  std::vector<TrialRecord> records;
  records.reserve(cfg.algorithms.size() * static_cast<std::size_t>(cfg.t_max));
  for (Solver solver : cfg.algorithms) {
    const GlmTrace trace = run(instance.problem, cfg.loop_config(solver), &instance.x_true);
    for (std::size_t i = 0; i < trace.iterates.size(); ++i) {
      TrialRecord rec;
      rec.algorithm = solver;
      rec.kappa = kappa;
      rec.trial = trial;
      rec.iteration = static_cast<int>(i + 1);
      rec.dnmse_db = trace.iterates[i].dnmse_db;
      rec.diverged = trace.diverged && static_cast<int>(i + 1) == trace.diverged_at;
      rec.wall_time_ms = trace.iterates[i].wall_ms;
      records.push_back(rec);
    }
  }
  return records;
}

}  // namespace

std::vector<TrialRecord> run_experiment(const ExperimentConfig& cfg, int threads) {
  cfg.validate();
  const int workers = resolve_thread_count(threads);
  const std::size_t cells = cfg.kappas.size() * static_cast<std::size_t>(cfg.trials);
  std::vector<std::vector<TrialRecord>> buckets(cells);

  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::string failure_message;
  std::mutex failure_mutex;

  auto work = [&]() {
    while (!failed.load(std::memory_order_relaxed)) {
      const std::size_t idx = next.fetch_add(1);
      if (idx >= cells) break;
      const std::size_t ki = idx / static_cast<std::size_t>(cfg.trials);
      const int trial = static_cast<int>(idx % static_cast<std::size_t>(cfg.trials));
      try {
        buckets[idx] = run_cell(cfg, cfg.kappas[ki], trial);
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        failure_message = e.what();
        failed.store(true);
      }
    }
  };

  std::vector<std::thread> pool;
  for (int t = 1; t < workers; ++t) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();
  if (failed.load()) throw SolverError("run_experiment: trial failed: " + failure_message);

  std::vector<TrialRecord> all;
  for (const auto& bucket : buckets) all.insert(all.end(), bucket.begin(), bucket.end());
  return all;
}

std::vector<SummaryRow> summarize(const std::vector<TrialRecord>& records, bool average_in_db) {
  if (records.empty()) throw ContractError("summarize: no records");

  // Diverged trials per (algorithm, kappa) cell.
  std::map<std::pair<int, double>, std::map<int, bool>> trial_diverged;
  for (const TrialRecord& r : records) {
    auto& cell = trial_diverged[{static_cast<int>(r.algorithm), r.kappa}];
    cell[r.trial] = cell[r.trial] || r.diverged;
  }

  struct Acc {
    double sum = 0.0;
    int count = 0;
  };
  std::map<std::tuple<int, double, int>, Acc> acc;
  std::vector<std::tuple<int, double, int>> order;
  for (const TrialRecord& r : records) {
    const auto& cell = trial_diverged[{static_cast<int>(r.algorithm), r.kappa}];
    if (cell.at(r.trial)) continue;
    const auto key = std::make_tuple(static_cast<int>(r.algorithm), r.kappa, r.iteration);
    auto it = acc.find(key);
    if (it == acc.end()) {
      order.push_back(key);
      it = acc.emplace(key, Acc{}).first;
    }
    it->second.sum += average_in_db ? r.dnmse_db : std::pow(10.0, r.dnmse_db / 10.0);
    it->second.count += 1;
  }

  // Sentinel rows for all-diverged cells (one per iteration seen).
  std::vector<std::tuple<int, double, int>> sentinel_order;
  for (const TrialRecord& r : records) {
    const auto key = std::make_tuple(static_cast<int>(r.algorithm), r.kappa, r.iteration);
    if (acc.count(key)) continue;
    bool seen = false;
    for (const auto& k : sentinel_order) seen = seen || k == key;
    if (!seen) sentinel_order.push_back(key);
  }

  std::vector<SummaryRow> rows;
  auto emit = [&](const std::tuple<int, double, int>& key, const Acc* a) {
    SummaryRow row;
    row.algorithm = static_cast<Solver>(std::get<0>(key));
    row.kappa = std::get<1>(key);
    row.iteration = std::get<2>(key);
    int diverged = 0;
    for (const auto& [trial, d] : trial_diverged[{std::get<0>(key), row.kappa}])
      if (d) ++diverged;
    row.diverged_trials = diverged;
    if (a && a->count > 0) {
      const double mean = a->sum / a->count;
      row.mean_dnmse_db = average_in_db ? mean : 10.0 * std::log10(mean);
      row.contributing_trials = a->count;
    } else {
      row.mean_dnmse_db = kAllDivergedSentinelDb;
      row.contributing_trials = 0;
    }
    rows.push_back(row);
  };
  for (const auto& key : order) emit(key, &acc.at(key));
  for (const auto& key : sentinel_order) emit(key, nullptr);
  return rows;
}

void write_records_csv(const std::vector<TrialRecord>& records, std::ostream& out) {
  out << "algorithm,kappa,trial,iteration,dnmse_db,diverged,wall_time_ms\n";
  char wall[32];
  for (const TrialRecord& r : records) {
    std::snprintf(wall, sizeof(wall), "%.3f", r.wall_time_ms);
    out << solver_name(r.algorithm) << ',' << format_double(r.kappa) << ',' << r.trial << ','
        << r.iteration << ',' << format_double(r.dnmse_db) << ',' << (r.diverged ? 1 : 0)
        << ',' << wall << '\n';
  }
}

void write_records_csv_file(const std::vector<TrialRecord>& records, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path);
  write_records_csv(records, out);
  if (!out) throw IoError("write failed: " + path);
}

std::string records_csv_string(const std::vector<TrialRecord>& records) {
  std::ostringstream ss;
  write_records_csv(records, ss);
  return ss.str();
}

void write_summary_csv(const std::vector<SummaryRow>& rows, std::ostream& out) {
  out << "algorithm,kappa,iteration,mean_dnmse_db,diverged_trials,contributing_trials\n";
  for (const SummaryRow& r : rows) {
    out << solver_name(r.algorithm) << ',' << format_double(r.kappa) << ',' << r.iteration
        << ',' << format_double(r.mean_dnmse_db) << ',' << r.diverged_trials << ','
        << r.contributing_trials << '\n';
  }
}

std::string summary_csv_string(const std::vector<SummaryRow>& rows) {
  std::ostringstream ss;
  write_summary_csv(rows, ss);
  return ss.str();
}

}  // namespace glmt
