#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bahnlab/core.hpp"
#include "bahnlab/predictors.hpp"

namespace bahnlab {

enum class AlgorithmKind { SUM, SUM_W, FSUM, PFSUM, SRL };

inline const char* to_string(AlgorithmKind k) {
  switch (k) {
    case AlgorithmKind::SUM: return "SUM";
    case AlgorithmKind::SUM_W: return "SUMW";
    case AlgorithmKind::FSUM: return "FSUM";
    case AlgorithmKind::PFSUM: return "PFSUM";
    case AlgorithmKind::SRL: return "SRL";
  }
  return "?";
}

struct AlgorithmSpec {
  AlgorithmKind kind = AlgorithmKind::SUM;
  std::optional<Rat> w;       // SUM_W prediction window length, 0 < w < T
  std::optional<Rat> lambda;  // SRL hyper-parameter, 0 < lambda <= 1
  // SRL sensitivity mode: also test candidate times on a dense grid with this
  // step instead of request times only.
  std::optional<Rat> srl_grid_step;

  void validate(const BahncardConfig& config) const {
    if (kind == AlgorithmKind::SUM_W) {
      if (!w) throw std::invalid_argument("SUM_w requires w");
      if (*w <= 0 || *w >= config.validity) throw std::invalid_argument("w must be in (0, T)");
    } else if (w) {
      throw std::invalid_argument("w only applies to SUM_w");
    }
    if (kind == AlgorithmKind::SRL) {
      if (!lambda) throw std::invalid_argument("SRL requires lambda");
      if (*lambda <= 0 || *lambda > 1) throw std::invalid_argument("lambda must be in (0, 1]");
    } else if (lambda) {
      throw std::invalid_argument("lambda only applies to SRL");
    }
  }

  std::string id() const {
    std::string s = to_string(kind);
    if (w) s += "_w=" + rat_to_string(*w);
    if (lambda) s += "_l=" + rat_to_string(*lambda);
    return s;
  }

  static AlgorithmSpec sum() { return {AlgorithmKind::SUM, {}, {}, {}}; }
  static AlgorithmSpec sum_w(Rat w) { return {AlgorithmKind::SUM_W, std::move(w), {}, {}}; }
  static AlgorithmSpec fsum() { return {AlgorithmKind::FSUM, {}, {}, {}}; }
  static AlgorithmSpec pfsum() { return {AlgorithmKind::PFSUM, {}, {}, {}}; }
  static AlgorithmSpec srl(Rat lambda) { return {AlgorithmKind::SRL, {}, std::move(lambda), {}}; }
};

// One algorithm execution over a sequence.
struct RunTrace {
  AlgorithmSpec spec;
  PurchaseSchedule schedule;
  std::vector<bool> reduced;  // per request: served under a valid card
  CostLedger ledger;
  PredictionLog prediction_log;
};

// Inputs available to a purchase rule at a regular request. regular_prefix[k]
// is the total price of regular-classified requests among the first k; the
// current request is regular by assumption and is accounted for explicitly.
struct DecisionContext {
  const RequestSequence& seq;
  const PrefixCost& prefix;                   // plain window costs c(sigma; .)
  const std::vector<Rat>& regular_prefix;     // size index+1
  std::size_t index;                          // current request
  const Predictor& predictor;
  const BahncardConfig& config;
  const AlgorithmSpec& spec;
  PredictionLog* log = nullptr;               // queries appended when non-null
};

namespace detail {

inline std::size_t first_index_after(const RequestSequence& seq, const Rat& t) {
  auto cmp = [](const Rat& v, const TravelRequest& r) { return v < r.time; };
  return static_cast<std::size_t>(std::upper_bound(seq.begin(), seq.end(), t, cmp) - seq.begin());
}

// ALG^r(sigma; (t-l, t]) from the prefix over regular-classified requests,
// with the current request included at its full price.
inline Rat regular_window_sum(const DecisionContext& c, const Rat& lo_open) {
  std::size_t b = first_index_after(c.seq, lo_open);
  if (b > c.index) b = c.index;
  return c.regular_prefix[c.index] - c.regular_prefix[b] + c.seq[c.index].price;
}

inline Rat query(const DecisionContext& c, const Interval& window) {
  Rat predicted = c.predictor.predict(window);
  if (c.log)
    c.log->push_back(PredictionQuery{c.seq[c.index].time, window, predicted,
                                     c.prefix.cost(window)});
  return predicted;
}

}  // namespace detail

// SUM: buy iff the regular T-recent-cost at t is at least gamma.
inline bool decide_sum(const DecisionContext& c) {
  const Rat& t = c.seq[c.index].time;
  return detail::regular_window_sum(c, t - c.config.validity) >= c.config.gamma();
}

// SUM_w: buy iff regular (T-w)-recent-cost plus the predicted cost in
// (t, t+w] reaches gamma.
inline bool decide_sum_w(const DecisionContext& c) {
  const Rat& t = c.seq[c.index].time;
  const Rat& w = *c.spec.w;
  Rat recent = detail::regular_window_sum(c, t + w - c.config.validity);
  Rat predicted = detail::query(c, Interval::open_closed(t, t + w));
  return recent + predicted >= c.config.gamma();
}

// FSUM: buy iff the predicted T-future-cost at t is at least gamma.
inline bool decide_fsum(const DecisionContext& c) {
  const Rat& t = c.seq[c.index].time;
  Rat predicted = detail::query(c, Interval::closed_open(t, t + c.config.validity));
  return predicted >= c.config.gamma();
}

// PFSUM: buy iff the T-recent-cost (total, not just regular) and the
// predicted T-future-cost are both at least gamma.
inline bool decide_pfsum(const DecisionContext& c) {
  const Rat& t = c.seq[c.index].time;
  const Rat& T = c.config.validity;
  Rat recent = c.prefix.cost(Interval::open_closed(t - T, t));
  Rat predicted = detail::query(c, Interval::closed_open(t, t + T));
  return recent >= c.config.gamma() && predicted >= c.config.gamma();
}

// SRL: buy iff some candidate t' in (t-T, t] has (i) predicted T-future-cost
// >= gamma and cost in [t', t] > lambda*gamma, or (ii) predicted < gamma and
// cost in [t', t] > gamma/lambda. Candidates are request times (or a dense
// grid when configured).
inline bool decide_srl(const DecisionContext& c) {
  const Rat& t = c.seq[c.index].time;
  const Rat& T = c.config.validity;
  const Rat& lambda = *c.spec.lambda;
  Rat gamma = c.config.gamma();
  bool buy = false;
  auto consider = [&](const Rat& tp) {
    Rat predicted = detail::query(c, Interval::closed_open(tp, tp + T));
    Rat cost_since = c.prefix.cost(Interval::closed(tp, t));
    if (predicted >= gamma ? cost_since > lambda * gamma : cost_since > gamma / lambda)
      buy = true;
  };
  if (c.spec.srl_grid_step) {
    for (Rat tp = t; tp > t - T; tp -= *c.spec.srl_grid_step) consider(tp);
  } else {
    for (std::size_t j = detail::first_index_after(c.seq, t - T); j <= c.index; ++j)
      consider(c.seq[j].time);
  }
  return buy;
}

inline bool decide(const DecisionContext& c) {
  switch (c.spec.kind) {
    case AlgorithmKind::SUM: return decide_sum(c);
    case AlgorithmKind::SUM_W: return decide_sum_w(c);
    case AlgorithmKind::FSUM: return decide_fsum(c);
    case AlgorithmKind::PFSUM: return decide_pfsum(c);
    case AlgorithmKind::SRL: return decide_srl(c);
  }
  throw std::logic_error("unknown algorithm kind");
}

// Replays the online game: requests arrive in time order; under a valid card
// the request is reduced unconditionally; otherwise the rule decides whether
// to buy at this instant (the purchasing request itself becomes reduced).
inline RunTrace run_online(const AlgorithmSpec& spec, const RequestSequence& seq,
                           const Predictor& predictor, const BahncardConfig& config) {
  spec.validate(config);
  require_valid(seq);

  RunTrace trace;
  trace.spec = spec;
  trace.reduced.resize(seq.size());

  PrefixCost prefix(seq);
  std::vector<Rat> regular_prefix;
  regular_prefix.reserve(seq.size() + 1);
  regular_prefix.push_back(Rat(0));

  std::optional<Rat> card_expiry;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    const auto& r = seq[i];
    bool covered = card_expiry && r.time < *card_expiry;
    bool is_reduced;
    if (covered) {
      is_reduced = true;
    } else {
      DecisionContext ctx{seq, prefix, regular_prefix, i,
                          predictor, config, spec, &trace.prediction_log};
      if (decide(ctx)) {
        trace.schedule.push_back(r.time);
        card_expiry = r.time + config.validity;
        trace.ledger.cards_bought += 1;
        trace.ledger.card_cost_total += config.card_cost;
        is_reduced = true;
      } else {
        is_reduced = false;
      }
    }
    trace.reduced[i] = is_reduced;
    if (is_reduced)
      trace.ledger.reduced_ticket_total += config.discount * r.price;
    else
      trace.ledger.regular_ticket_total += r.price;
    regular_prefix.push_back(regular_prefix.back() + (is_reduced ? Rat(0) : r.price));
  }
  return trace;
}

inline Rat regular_recent_cost(const RunTrace& trace, const RequestSequence& seq, const Rat& t,
                               const Rat& l) {
  return regular_recent_cost(seq, trace.reduced, t, l);
}

// Recomputes the ledger from schedule + classifications; used as an exactness
// check in tests.
inline CostLedger recompute_ledger(const RunTrace& trace, const RequestSequence& seq,
                                   const BahncardConfig& config) {
  CostLedger ledger;
  ledger.cards_bought = trace.schedule.size();
  ledger.card_cost_total = config.card_cost * static_cast<long>(trace.schedule.size());
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (trace.reduced[i])
      ledger.reduced_ticket_total += config.discount * seq[i].price;
    else
      ledger.regular_ticket_total += seq[i].price;
  }
  return ledger;
}

}  // namespace bahnlab
