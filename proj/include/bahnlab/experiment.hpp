#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "bahnlab/algos.hpp"
#include "bahnlab/analysis.hpp"
#include "bahnlab/generate.hpp"
#include "bahnlab/offline.hpp"
#include "bahnlab/parallel.hpp"
#include "bahnlab/predictors.hpp"

namespace bahnlab {

struct ExperimentConfig {
  BahncardConfig config;
  ProfileParams profile;  // profile.rng_seed is ignored; seeds derive per run
  std::vector<AlgorithmSpec> algorithms;
  std::vector<Rat> perturbations;  // p values in [0,1]
  int runs_per_point = 100;
  std::uint64_t base_seed = 0;
  // Noise added by the perturbation; by default the price distribution of the
  // instance itself.
  PriceDist noise;
  bool removal_first = true;
  bool independent_streams = false;

  explicit ExperimentConfig(BahncardConfig cfg) : config(std::move(cfg)), noise(PriceDist::normal) {}

  void validate() const {
    if (runs_per_point < 1) throw std::invalid_argument("runs_per_point must be >= 1");
    if (algorithms.empty()) throw std::invalid_argument("no algorithms configured");
    for (const auto& a : algorithms) a.validate(config);
    for (const auto& p : perturbations)
      if (p < 0 || p > 1) throw std::invalid_argument("perturbation probability out of [0,1]");
  }
};

struct ResultRow {
  std::string algorithm;
  Rat p;
  double mean_ratio;
  double ci95_lo;
  double ci95_hi;
  double mean_eta;
  int runs;  // runs included in the mean (ZeroOpt runs are excluded)
};

struct ExperimentResult {
  std::vector<ResultRow> rows;
  int zero_opt_skips = 0;
};

namespace detail {

struct RunOutcome {
  bool ok = false;  // false: skipped (ZeroOpt)
  Rat ratio;
  Rat eta;
};

}  // namespace detail

// Per-run seeds: instance from mix64(base_seed, r), perturbation from
// mix64(base_seed, r, hash(p)). Runs execute on a worker pool; the
// aggregation is a deterministic fold in (algorithm, p, run) order.
inline ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  const std::size_t runs = static_cast<std::size_t>(cfg.runs_per_point);
  const std::size_t n_algs = cfg.algorithms.size();
  const std::size_t n_ps = cfg.perturbations.size();

  // outcomes[r][ip][ia]
  std::vector<std::vector<std::vector<detail::RunOutcome>>> outcomes(
      runs, std::vector<std::vector<detail::RunOutcome>>(
                n_ps, std::vector<detail::RunOutcome>(n_algs)));

  parallel_for(runs, [&](std::size_t r) {
    ProfileParams pp = cfg.profile;
    pp.rng_seed = mix64(cfg.base_seed, r);
    RequestSequence seq = generate_instance(pp);
    OptSolution opt = opt_dp(seq, cfg.config);
    auto grid = day_grid_for(cfg.profile.horizon_days);
    for (std::size_t ip = 0; ip < n_ps; ++ip) {
      PerturbationParams params;
      params.probability = cfg.perturbations[ip];
      params.noise = cfg.noise;
      params.rng_seed = mix64(cfg.base_seed, r, hash_string(rat_to_string(cfg.perturbations[ip])));
      params.removal_first = cfg.removal_first;
      params.independent_streams = cfg.independent_streams;
      DerivedPredictor predictor(perturb_instance(seq, params, grid));
      for (std::size_t ia = 0; ia < n_algs; ++ia) {
        RunTrace trace = run_online(cfg.algorithms[ia], seq, predictor, cfg.config);
        auto& slot = outcomes[r][ip][ia];
        if (opt.total_cost == 0) continue;  // skip-and-report
        slot.ok = true;
        slot.ratio = trace.ledger.total() / opt.total_cost;
        slot.eta = measure_eta(trace.prediction_log);
      }
    }
  });

  ExperimentResult result;
  for (std::size_t ia = 0; ia < n_algs; ++ia) {
    for (std::size_t ip = 0; ip < n_ps; ++ip) {
      Rat ratio_sum = 0, eta_sum = 0;
      std::vector<Rat> ratios;
      for (std::size_t r = 0; r < runs; ++r) {
        const auto& o = outcomes[r][ip][ia];
        if (!o.ok) {
          ++result.zero_opt_skips;
          continue;
        }
        ratio_sum += o.ratio;
        eta_sum += o.eta;
        ratios.push_back(o.ratio);
      }
      ResultRow row;
      row.algorithm = cfg.algorithms[ia].id();
      row.p = cfg.perturbations[ip];
      row.runs = static_cast<int>(ratios.size());
      if (!ratios.empty()) {
        Rat mean = ratio_sum / static_cast<long>(ratios.size());
        row.mean_ratio = rat_to_double(mean);
        row.mean_eta = rat_to_double(eta_sum / static_cast<long>(ratios.size()));
        double half = 0;
        if (ratios.size() > 1) {
          Rat ss = 0;
          for (const auto& x : ratios) ss += (x - mean) * (x - mean);
          double var = rat_to_double(ss) / static_cast<double>(ratios.size() - 1);
          half = 1.96 * std::sqrt(var / static_cast<double>(ratios.size()));
        }
        row.ci95_lo = row.mean_ratio - half;
        row.ci95_hi = row.mean_ratio + half;
      } else {
        row.mean_ratio = row.ci95_lo = row.ci95_hi = row.mean_eta = 0;
      }
      result.rows.push_back(std::move(row));
    }
  }
  std::sort(result.rows.begin(), result.rows.end(), [](const ResultRow& a, const ResultRow& b) {
    if (a.algorithm != b.algorithm) return a.algorithm < b.algorithm;
    return a.p < b.p;
  });
  return result;
}

// CSV contract: UTF-8, LF line endings, fixed 6-decimal columns.
inline std::string result_csv(const std::vector<ResultRow>& rows) {
  std::string out = "algorithm,p,mean_ratio,ci95_lo,ci95_hi,mean_eta,runs\n";
  char buf[160];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%s,%s,%.6f,%.6f,%.6f,%.6f,%d\n", r.algorithm.c_str(),
                  rat_to_decimal(r.p, 6).c_str(), r.mean_ratio, r.ci95_lo, r.ci95_hi, r.mean_eta,
                  r.runs);
    out += buf;
  }
  return out;
}

}  // namespace bahnlab
