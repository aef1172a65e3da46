#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bahnlab/rational.hpp"

namespace bahnlab {

// One travel request (t_i, p_i): time in days, price in currency units.
struct TravelRequest {
  Rat time;
  Rat price;
};

// Finite request sequence, strictly increasing in time.
using RequestSequence = std::vector<TravelRequest>;

struct SequenceError {
  enum class Kind { DuplicateTime, NonMonotonic, NegativeValue };
  Kind kind;
  std::size_t index;  // offending request

  std::string message() const {
    switch (kind) {
      case Kind::DuplicateTime: return "duplicate time at index " + std::to_string(index);
      case Kind::NonMonotonic: return "non-monotonic time at index " + std::to_string(index);
      case Kind::NegativeValue: return "negative time or price at index " + std::to_string(index);
    }
    return "unknown";
  }
};

inline std::optional<SequenceError> validate_sequence(const RequestSequence& seq) {
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (seq[i].time < 0 || seq[i].price < 0)
      return SequenceError{SequenceError::Kind::NegativeValue, i};
    if (i > 0) {
      if (seq[i].time == seq[i - 1].time)
        return SequenceError{SequenceError::Kind::DuplicateTime, i};
      if (seq[i].time < seq[i - 1].time)
        return SequenceError{SequenceError::Kind::NonMonotonic, i};
    }
  }
  return std::nullopt;
}

inline void require_valid(const RequestSequence& seq) {
  if (auto err = validate_sequence(seq)) throw std::invalid_argument(err->message());
}

// Problem parameters: a card costs C, discounts every ticket to beta*p, and is
// valid for [t, t+T). gamma = C/(1-beta) is the break-even ticket volume.
struct BahncardConfig {
  Rat card_cost;  // C > 0
  Rat discount;   // beta in [0,1)
  Rat validity;   // T > 0

  BahncardConfig(Rat C, Rat beta, Rat T)
      : card_cost(std::move(C)), discount(std::move(beta)), validity(std::move(T)) {
    if (card_cost <= 0) throw std::invalid_argument("card cost must be positive");
    if (discount < 0 || discount >= 1) throw std::invalid_argument("discount must be in [0,1)");
    if (validity <= 0) throw std::invalid_argument("validity must be positive");
  }

  Rat gamma() const { return card_cost / (1 - discount); }
};

// Interval with independently open/closed endpoints; the carrier for the
// (t-T, t], [t, t+T) and [mu, mu+T) conventions used throughout.
struct Interval {
  Rat lo;
  Rat hi;
  bool lo_closed = true;
  bool hi_closed = false;

  static Interval closed_open(Rat a, Rat b) { return {std::move(a), std::move(b), true, false}; }
  static Interval open_closed(Rat a, Rat b) { return {std::move(a), std::move(b), false, true}; }
  static Interval closed(Rat a, Rat b) { return {std::move(a), std::move(b), true, true}; }
  static Interval open(Rat a, Rat b) { return {std::move(a), std::move(b), false, false}; }

  bool contains(const Rat& x) const {
    if (lo_closed ? x < lo : x <= lo) return false;
    if (hi_closed ? x > hi : x >= hi) return false;
    return true;
  }

  bool empty() const { return lo > hi || (lo == hi && !(lo_closed && hi_closed)); }

  std::string str() const {
    return std::string(lo_closed ? "[" : "(") + rat_to_string(lo) + ", " + rat_to_string(hi) +
           (hi_closed ? "]" : ")");
  }
};

namespace detail {

// First index whose time could lie in the window, and one past the last.
inline std::size_t window_begin(const RequestSequence& seq, const Interval& w) {
  auto cmp = [](const TravelRequest& r, const Rat& t) { return r.time < t; };
  auto it = std::lower_bound(seq.begin(), seq.end(), w.lo, cmp);
  if (!w.lo_closed)
    while (it != seq.end() && it->time == w.lo) ++it;
  return static_cast<std::size_t>(it - seq.begin());
}

inline std::size_t window_end(const RequestSequence& seq, const Interval& w) {
  auto cmp = [](const TravelRequest& r, const Rat& t) { return r.time < t; };
  auto it = std::lower_bound(seq.begin(), seq.end(), w.hi, cmp);
  if (w.hi_closed)
    while (it != seq.end() && it->time == w.hi) ++it;
  return static_cast<std::size_t>(it - seq.begin());
}

}  // namespace detail

// c(sigma; I): total regular (undiscounted) price of requests inside I.
inline Rat window_cost(const RequestSequence& seq, const Interval& w) {
  Rat sum = 0;
  std::size_t b = detail::window_begin(seq, w);
  std::size_t e = detail::window_end(seq, w);
  for (std::size_t i = b; i < e; ++i) sum += seq[i].price;
  return sum;
}

// Prefix sums over a fixed sequence; answers window_cost queries with one
// rational subtraction. The referenced sequence must outlive this object.
class PrefixCost {
 public:
  explicit PrefixCost(const RequestSequence& seq) : seq_(&seq), prefix_(seq.size() + 1) {
    for (std::size_t i = 0; i < seq.size(); ++i) prefix_[i + 1] = prefix_[i] + seq[i].price;
  }

  Rat cost(const Interval& w) const {
    std::size_t b = detail::window_begin(*seq_, w);
    std::size_t e = detail::window_end(*seq_, w);
    if (b >= e) return Rat(0);
    return prefix_[e] - prefix_[b];
  }

  const RequestSequence& sequence() const { return *seq_; }

 private:
  const RequestSequence* seq_;
  std::vector<Rat> prefix_;
};

// Purchase times mu_1 < mu_2 < ... (or OPT's tau_i).
using PurchaseSchedule = std::vector<Rat>;

// Cost breakdown of one run; all components exact.
struct CostLedger {
  std::size_t cards_bought = 0;
  Rat card_cost_total = 0;
  Rat reduced_ticket_total = 0;  // beta-discounted payments, after discount
  Rat regular_ticket_total = 0;

  Rat total() const { return card_cost_total + reduced_ticket_total + regular_ticket_total; }
};

struct OverlappingCardsError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Epoch {
  Rat start;
  Rat end;
  std::optional<Interval> on_phase;   // [mu_j, mu_j+T), absent for E_0
  std::optional<Interval> off_phase;  // [mu_j+T, mu_{j+1}), may be empty-length
};

struct EpochDecomposition {
  std::vector<Epoch> epochs;
  Rat horizon;
  // True when the final off phase extends past the last purchase's validity;
  // it is included in reports but carries no algorithmic meaning.
  bool trailing_off_flagged = false;
};

// Splits [0, horizon) into epochs E_j = [mu_j, mu_{j+1}) with on phase
// [mu_j, mu_j+T). Only valid for schedules whose purchases are >= T apart.
inline EpochDecomposition epoch_decomposition(const PurchaseSchedule& schedule,
                                              const BahncardConfig& config, const Rat& horizon) {
  for (std::size_t i = 1; i < schedule.size(); ++i) {
    if (schedule[i] - schedule[i - 1] < config.validity)
      throw OverlappingCardsError("purchases " + rat_to_string(schedule[i - 1]) + " and " +
                                  rat_to_string(schedule[i]) + " are less than T apart");
  }
  EpochDecomposition out;
  out.horizon = horizon;
  Rat first = schedule.empty() ? horizon : std::min(schedule.front(), horizon);
  out.epochs.push_back(Epoch{0, first, std::nullopt, Interval::closed_open(0, first)});
  for (std::size_t j = 0; j < schedule.size(); ++j) {
    const Rat& mu = schedule[j];
    if (mu >= horizon) break;
    Rat next = (j + 1 < schedule.size()) ? std::min(schedule[j + 1], horizon) : horizon;
    Rat on_end = std::min(mu + config.validity, next);
    Epoch e;
    e.start = mu;
    e.end = next;
    e.on_phase = Interval::closed_open(mu, on_end);
    e.off_phase = Interval::closed_open(on_end, next);
    out.epochs.push_back(std::move(e));
  }
  if (!schedule.empty() && horizon > schedule.back() + config.validity)
    out.trailing_off_flagged = true;
  return out;
}

// ALG^r(sigma; (t-l, t]): prices of requests in the window that the traced
// algorithm served at the regular price. `reduced` must parallel `seq`.
inline Rat regular_recent_cost(const RequestSequence& seq, const std::vector<bool>& reduced,
                               const Rat& t, const Rat& l) {
  if (reduced.size() != seq.size()) throw std::invalid_argument("classification size mismatch");
  Interval w = Interval::open_closed(t - l, t);
  Rat sum = 0;
  std::size_t b = detail::window_begin(seq, w);
  std::size_t e = detail::window_end(seq, w);
  for (std::size_t i = b; i < e; ++i)
    if (!reduced[i]) sum += seq[i].price;
  return sum;
}

}  // namespace bahnlab
