#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bahnlab/algos.hpp"
#include "bahnlab/core.hpp"
#include "bahnlab/offline.hpp"

namespace bahnlab {

// Competitive ratio of PFSUM as a function of the prediction error:
//   (2*gamma + (2-beta)*eta) / ((1+beta)*gamma + beta*eta)   for eta <= gamma
//   ((3-beta)*gamma + eta)   / ((1+beta)*gamma + beta*eta)   for eta >  gamma
// Continuous at eta = gamma; tends to 1/beta as eta grows.
inline Rat cr_bound_pfsum(const Rat& eta, const BahncardConfig& config) {
  if (eta < 0) throw std::invalid_argument("eta must be non-negative");
  Rat gamma = config.gamma();
  const Rat& beta = config.discount;
  Rat den = (1 + beta) * gamma + beta * eta;
  if (eta <= gamma) return (2 * gamma + (2 - beta) * eta) / den;
  return ((3 - beta) * gamma + eta) / den;
}

// What is known about an algorithm's competitive ratio at a given error.
struct BoundInfo {
  enum class Kind {
    upper,            // value is a proven upper bound on the ratio
    lower_bound_only, // value is a proven lower bound (no matching upper)
    unbounded,        // ratio can be driven arbitrarily high
    unavailable,      // no bound implemented
  };
  Kind kind;
  std::optional<Rat> value;

  bool is_upper() const { return kind == Kind::upper; }
};

inline BoundInfo bound_for(const AlgorithmSpec& spec, const Rat& eta,
                           const BahncardConfig& config) {
  const Rat& beta = config.discount;
  switch (spec.kind) {
    case AlgorithmKind::SUM:
      return {BoundInfo::Kind::upper, Rat(2 - beta)};
    case AlgorithmKind::FSUM:
      if (eta == 0) return {BoundInfo::Kind::upper, Rat(2 / (1 + beta))};
      return {BoundInfo::Kind::unbounded, std::nullopt};
    case AlgorithmKind::SUM_W:
      if (eta == 0) return {BoundInfo::Kind::lower_bound_only, Rat((3 - beta) / (1 + beta))};
      return {BoundInfo::Kind::unbounded, std::nullopt};
    case AlgorithmKind::PFSUM:
      return {BoundInfo::Kind::upper, cr_bound_pfsum(eta, config)};
    case AlgorithmKind::SRL:
      return {BoundInfo::Kind::unavailable, std::nullopt};
  }
  return {BoundInfo::Kind::unavailable, std::nullopt};
}

// ALG(sigma; I): card costs for purchases inside I plus per-request payments
// for requests inside I.
inline Rat trace_interval_cost(const RunTrace& trace, const RequestSequence& seq,
                               const BahncardConfig& config, const Interval& interval) {
  Rat cost = 0;
  for (const auto& mu : trace.schedule)
    if (interval.contains(mu)) cost += config.card_cost;
  for (std::size_t i = 0; i < seq.size(); ++i)
    if (interval.contains(seq[i].time))
      cost += trace.reduced[i] ? config.discount * seq[i].price : seq[i].price;
  return cost;
}

inline Rat opt_interval_cost(const OptSolution& opt, const RequestSequence& seq,
                             const BahncardConfig& config, const Interval& interval) {
  Rat cost = 0;
  for (const auto& tau : opt.schedule)
    if (interval.contains(tau)) cost += config.card_cost;
  for (std::size_t i = 0; i < seq.size(); ++i)
    if (interval.contains(seq[i].time)) cost += opt.per_request_cost[i];
  return cost;
}

// The three structural facts a PFSUM trace must satisfy at its measured
// prediction error.
enum class LemmaKind {
  on_phase_floor,      // every on phase carries total regular cost >= gamma - eta
  off_window_cap,      // inside an off phase, any window of length <= T is < 2*gamma + eta
  flanked_window_cap,  // a length-T window overlapping an off phase whose flank
                       // sums s2, s4 are each <= gamma has s2+s3+s4 <= 2*gamma + eta
};

inline const char* to_string(LemmaKind k) {
  switch (k) {
    case LemmaKind::on_phase_floor: return "on-phase floor";
    case LemmaKind::off_window_cap: return "off-window cap";
    case LemmaKind::flanked_window_cap: return "flanked-window cap";
  }
  return "?";
}

struct LemmaViolation {
  LemmaKind kind;
  Interval window;
  Rat observed;
  Rat threshold;

  std::string message() const {
    return std::string(to_string(kind)) + " violated on " + window.str() + ": observed " +
           rat_to_string(observed) + " vs threshold " + rat_to_string(threshold);
  }
};

// Verifies all three facts above; the flanked-window cap only applies when
// eta <= gamma. The trace must come from PFSUM.
inline std::vector<LemmaViolation> check_lemmas(const RunTrace& trace, const RequestSequence& seq,
                                                const BahncardConfig& config) {
  if (trace.spec.kind != AlgorithmKind::PFSUM)
    throw std::invalid_argument("check_lemmas expects a PFSUM trace");
  std::vector<LemmaViolation> out;
  Rat eta = measure_eta(trace.prediction_log);
  Rat gamma = config.gamma();
  const Rat& T = config.validity;
  PrefixCost prefix(seq);

  Rat horizon = 0;
  if (!seq.empty()) horizon = seq.back().time + T;
  if (!trace.schedule.empty() && trace.schedule.back() + T > horizon)
    horizon = trace.schedule.back() + T;
  auto epochs = epoch_decomposition(trace.schedule, config, horizon);

  // on-phase floor, over full on windows [mu, mu+T)
  for (const auto& mu : trace.schedule) {
    Interval on = Interval::closed_open(mu, mu + T);
    Rat c = prefix.cost(on);
    if (c < gamma - eta)
      out.push_back(LemmaViolation{LemmaKind::on_phase_floor, on, c, gamma - eta});
  }

  // off-window cap: within each off phase, the largest window starting at
  // each request dominates every sub-window.
  for (const auto& epoch : epochs.epochs) {
    if (!epoch.off_phase || epoch.off_phase->empty()) continue;
    const Interval& off = *epoch.off_phase;
    std::size_t b = detail::window_begin(seq, off);
    std::size_t e = detail::window_end(seq, off);
    for (std::size_t i = b; i < e; ++i) {
      Rat hi = seq[i].time + T;
      if (hi > off.hi) hi = off.hi;
      Interval w = Interval::closed_open(seq[i].time, hi);
      Rat c = prefix.cost(w);
      if (c >= 2 * gamma + eta)
        out.push_back(LemmaViolation{LemmaKind::off_window_cap, w, c, 2 * gamma + eta});
    }
  }

  // flanked-window cap: candidate starts are request times and phase
  // boundaries.
  if (eta <= gamma) {
    std::vector<Rat> starts;
    for (const auto& r : seq) starts.push_back(r.time);
    for (const auto& mu : trace.schedule) {
      starts.push_back(mu);
      starts.push_back(mu + T);
    }
    for (const auto& t : starts) {
      // Locate the (unique) off phase a length-T window starting at t can
      // overlap, plus its flanking on phases.
      const Interval* off = nullptr;
      const Interval* on_before = nullptr;
      const Interval* on_after = nullptr;
      for (std::size_t j = 0; j < epochs.epochs.size(); ++j) {
        const auto& ep = epochs.epochs[j];
        bool in_on = ep.on_phase && ep.on_phase->contains(t);
        bool in_off = ep.off_phase && ep.off_phase->contains(t);
        if (!in_on && !in_off) continue;
        if (ep.off_phase && !ep.off_phase->empty()) {
          off = &*ep.off_phase;
          on_before = in_on ? &*ep.on_phase : nullptr;
          if (in_off) on_before = nullptr;  // window starts past the on phase
          if (j + 1 < epochs.epochs.size() && epochs.epochs[j + 1].on_phase)
            on_after = &*epochs.epochs[j + 1].on_phase;
        } else if (in_on) {
          // zero-length off phase: window cannot overlap an off phase here
        }
        break;
      }
      if (!off) continue;
      Rat end = t + T;
      if (end <= off->lo) continue;  // does not reach the off phase
      auto clip = [&](const Interval& phase) {
        Rat lo = std::max(t, phase.lo);
        Rat hi = std::min(end, phase.hi);
        if (lo >= hi) return Rat(0);
        return prefix.cost(Interval::closed_open(lo, hi));
      };
      Rat s2 = on_before ? clip(*on_before) : Rat(0);
      Rat s3 = clip(*off);
      Rat s4 = on_after ? clip(*on_after) : Rat(0);
      if (s2 <= gamma && s4 <= gamma) {
        Rat total = s2 + s3 + s4;
        if (total > 2 * gamma + eta)
          out.push_back(LemmaViolation{LemmaKind::flanked_window_cap,
                                       Interval::closed_open(t, end), total, 2 * gamma + eta});
      }
    }
  }
  return out;
}

struct ZeroOptError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RatioReport {
  Rat alg_cost;
  Rat opt_cost;
  Rat ratio;
  Rat eta;
  BoundInfo bound;
  bool within_bound;  // ratio <= bound when an upper bound applies, else true
};

inline RatioReport ratio_report(const RunTrace& trace, const OptSolution& opt,
                                const BahncardConfig& config) {
  RatioReport r;
  r.alg_cost = trace.ledger.total();
  r.opt_cost = opt.total_cost;
  if (r.opt_cost == 0) throw ZeroOptError("OPT cost is zero; ratio undefined");
  r.ratio = r.alg_cost / r.opt_cost;
  r.eta = measure_eta(trace.prediction_log);
  r.bound = bound_for(trace.spec, r.eta, config);
  r.within_bound = r.bound.is_upper() ? r.ratio <= *r.bound.value : true;
  return r;
}

}  // namespace bahnlab
