#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <vector>

#include "bahnlab/core.hpp"
#include "bahnlab/rng.hpp"

namespace bahnlab {

// One prediction c_hat(sigma; window) together with the true window cost,
// recomputed from the real sequence at query time.
struct PredictionQuery {
  Rat time;         // decision time t
  Interval window;  // [t, t+T) for FSUM/PFSUM/SRL, (t, t+w] for SUM_w
  Rat predicted;
  Rat actual;
};

using PredictionLog = std::vector<PredictionQuery>;

// eta: maximum |c_hat - c| over the predictions the algorithm actually
// queried; 0 for an empty log.
inline Rat measure_eta(const PredictionLog& log) {
  Rat eta = 0;
  for (const auto& q : log) {
    Rat err = q.predicted >= q.actual ? q.predicted - q.actual : q.actual - q.predicted;
    if (err > eta) eta = err;
  }
  return eta;
}

// Answers c_hat(sigma; window) queries. Implementations are immutable after
// construction; one instance may serve any number of concurrent runs.
class Predictor {
 public:
  virtual ~Predictor() = default;
  virtual Rat predict(const Interval& window) const = 0;
};

class PerfectPredictor final : public Predictor {
 public:
  explicit PerfectPredictor(const RequestSequence& true_seq) : prefix_(true_seq) {}
  Rat predict(const Interval& window) const override { return prefix_.cost(window); }

 private:
  PrefixCost prefix_;
};

// Prediction = total regular cost over the window in a perturbed copy of the
// instance (materialized up front).
class DerivedPredictor final : public Predictor {
 public:
  explicit DerivedPredictor(RequestSequence perturbed)
      : perturbed_(std::move(perturbed)), prefix_(perturbed_) {}
  Rat predict(const Interval& window) const override { return prefix_.cost(window); }
  const RequestSequence& perturbed() const { return perturbed_; }

 private:
  RequestSequence perturbed_;
  PrefixCost prefix_;
};

// True cost plus a fixed signed bias, clamped at 0. Gives direct control of
// the realized error for bound-tightness tests.
class SyntheticBiasPredictor final : public Predictor {
 public:
  SyntheticBiasPredictor(const RequestSequence& true_seq, Rat bias)
      : prefix_(true_seq), bias_(std::move(bias)) {}
  Rat predict(const Interval& window) const override {
    Rat v = prefix_.cost(window) + bias_;
    return v < 0 ? Rat(0) : v;
  }

 private:
  PrefixCost prefix_;
  Rat bias_;
};

// Per-query prediction values keyed by the window start; anything not listed
// falls back to the true cost. Tight-instance constructors emit these.
class ScriptedPredictor final : public Predictor {
 public:
  ScriptedPredictor(const RequestSequence& true_seq, std::map<Rat, Rat> by_start)
      : prefix_(true_seq), by_start_(std::move(by_start)) {}
  Rat predict(const Interval& window) const override {
    auto it = by_start_.find(window.lo);
    if (it != by_start_.end()) return it->second;
    return prefix_.cost(window);
  }

 private:
  PrefixCost prefix_;
  std::map<Rat, Rat> by_start_;
};

struct NonDayGranularError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct PerturbationParams {
  Rat probability;             // p in [0,1]
  PriceDist noise = PriceDist::normal;
  std::uint64_t rng_seed = 0;
  // Flip order and stream layout are not pinned by the perturbation model;
  // defaults: removal flip first, then the noise/addition flip on the
  // post-removal state, all draws from a single stream in day order.
  bool removal_first = true;
  bool independent_streams = false;
};

inline std::vector<std::int64_t> day_grid_for(std::int64_t horizon_days) {
  std::vector<std::int64_t> g(static_cast<std::size_t>(horizon_days));
  for (std::int64_t d = 0; d < horizon_days; ++d) g[static_cast<std::size_t>(d)] = d;
  return g;
}

// Day-granular perturbation: per day, one coin flip removes the existing
// request and an independent flip either adds fresh noise to the surviving
// price or creates a request where none exists. Deterministic given the seed.
inline RequestSequence perturb_instance(const RequestSequence& seq,
                                        const PerturbationParams& params,
                                        const std::vector<std::int64_t>& day_grid) {
  if (params.probability < 0 || params.probability > 1)
    throw std::invalid_argument("perturbation probability out of [0,1]");
  std::map<std::int64_t, Rat> by_day;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (denominator(seq[i].time) != 1)
      throw NonDayGranularError("request time " + rat_to_string(seq[i].time) +
                                " is not a whole day");
    by_day[numerator(seq[i].time).convert_to<std::int64_t>()] = seq[i].price;
  }

  Rng single(params.rng_seed);
  Rng remove_rng(mix64(params.rng_seed, 1));
  Rng noise_rng(mix64(params.rng_seed, 2));
  Rng price_rng(mix64(params.rng_seed, 3));

  RequestSequence out;
  for (std::int64_t day : day_grid) {
    bool flip_remove, flip_noise;
    if (params.independent_streams) {
      flip_remove = remove_rng.bernoulli(params.probability);
      flip_noise = noise_rng.bernoulli(params.probability);
    } else {
      flip_remove = single.bernoulli(params.probability);
      flip_noise = single.bernoulli(params.probability);
    }
    Rng& price_src = params.independent_streams ? price_rng : single;

    auto it = by_day.find(day);
    bool exists = it != by_day.end();
    Rat price = exists ? it->second : Rat(0);

    auto apply_remove = [&] {
      if (flip_remove) exists = false;
    };
    auto apply_noise = [&] {
      if (!flip_noise) return;
      Rat sample = quantize_price(sample_price(price_src, params.noise));
      if (exists) {
        price += sample;
        if (price < 0) price = 0;
      } else {
        exists = true;
        price = sample;
      }
    };

    if (params.removal_first) {
      apply_remove();
      apply_noise();
    } else {
      apply_noise();
      apply_remove();
    }
    if (exists) out.push_back(TravelRequest{Rat(day), price});
  }
  return out;
}

// Convenience wrappers for the named prediction operations.
inline Rat perfect_predict(const RequestSequence& seq, const Rat& t, const Rat& T) {
  return window_cost(seq, Interval::closed_open(t, t + T));
}

inline Rat derived_predict(const RequestSequence& perturbed, const Rat& t, const Rat& T) {
  return window_cost(perturbed, Interval::closed_open(t, t + T));
}

inline Rat synthetic_predict(const RequestSequence& seq, const Rat& t, const Rat& T,
                             const Rat& bias) {
  Rat v = perfect_predict(seq, t, T) + bias;
  return v < 0 ? Rat(0) : v;
}

}  // namespace bahnlab
