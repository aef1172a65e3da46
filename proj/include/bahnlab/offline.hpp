#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "bahnlab/core.hpp"

namespace bahnlab {

// Exact offline optimum: minimal total cost and a deterministic witness
// schedule (ties broken toward fewer cards, then lexicographically earliest
// purchase times).
struct OptSolution {
  Rat total_cost;
  PurchaseSchedule schedule;
  std::vector<Rat> per_request_cost;  // p_i or beta*p_i per coverage
};

// Cost of serving `seq` with an arbitrary purchase schedule: every card costs
// C, a request is reduced iff some card covers it (overlaps give no extra
// discount).
inline Rat evaluate_schedule(const RequestSequence& seq, const PurchaseSchedule& schedule,
                             const BahncardConfig& config) {
  Rat cost = config.card_cost * static_cast<long>(schedule.size());
  std::size_t next_card = 0;
  Rat expiry = -1;
  for (const auto& r : seq) {
    while (next_card < schedule.size() && schedule[next_card] <= r.time) {
      Rat e = schedule[next_card] + config.validity;
      if (e > expiry) expiry = e;
      ++next_card;
    }
    cost += (r.time < expiry) ? config.discount * r.price : r.price;
  }
  return cost;
}

// f(i) = min(p_i + f(i+1), C + beta*c(sigma;[t_i, t_i+T)) + f(k)) with k the
// first index at or past t_i+T; purchases only at request times (a purchase
// elsewhere can be delayed to the next regular request at no extra cost), and
// never while a card is valid (a second overlapping card adds C while the
// overlap is discounted once either way). docs/optimality-note.md spells the
// argument out; the brute-force oracle cross-checks it.
inline OptSolution opt_dp(const RequestSequence& seq, const BahncardConfig& config) {
  require_valid(seq);
  const std::size_t n = seq.size();
  PrefixCost prefix(seq);

  std::vector<Rat> f(n + 1);
  std::vector<std::size_t> cards(n + 1, 0);
  std::vector<bool> buy(n, false);
  std::vector<std::size_t> skip_to(n);

  f[n] = 0;
  for (std::size_t ii = n; ii-- > 0;) {
    Rat t_end = seq[ii].time + config.validity;
    auto cmp = [](const TravelRequest& r, const Rat& t) { return r.time < t; };
    std::size_t k = static_cast<std::size_t>(
        std::lower_bound(seq.begin(), seq.end(), t_end, cmp) - seq.begin());
    skip_to[ii] = k;

    Rat covered = prefix.cost(Interval::closed_open(seq[ii].time, t_end));
    Rat buy_cost = config.card_cost + config.discount * covered + f[k];
    std::size_t buy_cards = cards[k] + 1;
    Rat pass_cost = seq[ii].price + f[ii + 1];
    std::size_t pass_cards = cards[ii + 1];

    // Tie policy: cheaper first, then fewer cards, then buy (which yields the
    // lexicographically earliest purchase times).
    bool take_buy;
    if (buy_cost != pass_cost)
      take_buy = buy_cost < pass_cost;
    else if (buy_cards != pass_cards)
      take_buy = buy_cards < pass_cards;
    else
      take_buy = true;

    if (take_buy) {
      f[ii] = buy_cost;
      cards[ii] = buy_cards;
      buy[ii] = true;
    } else {
      f[ii] = pass_cost;
      cards[ii] = pass_cards;
    }
  }

  OptSolution out;
  out.total_cost = f[0];
  out.per_request_cost.resize(n);
  std::size_t i = 0;
  while (i < n) {
    if (buy[i]) {
      out.schedule.push_back(seq[i].time);
      std::size_t k = skip_to[i];
      for (std::size_t j = i; j < k; ++j) out.per_request_cost[j] = config.discount * seq[j].price;
      i = k;
    } else {
      out.per_request_cost[i] = seq[i].price;
      ++i;
    }
  }
  return out;
}

struct TooLargeError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Independent oracle: minimum over all 2^n purchase-time subsets, evaluated
// under the same no-double-discount rule.
inline Rat opt_bruteforce(const RequestSequence& seq, const BahncardConfig& config) {
  require_valid(seq);
  const std::size_t n = seq.size();
  if (n > 15) throw TooLargeError("opt_bruteforce limited to 15 requests");
  Rat best = 0;
  for (const auto& r : seq) best += r.price;  // empty purchase set
  for (unsigned long mask = 1; mask < (1ul << n); ++mask) {
    Rat cost = 0;
    Rat expiry = -1;
    std::size_t cards = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (1ul << i)) {
        ++cards;
        Rat e = seq[i].time + config.validity;
        if (e > expiry) expiry = e;
      }
      cost += (seq[i].time < expiry) ? config.discount * seq[i].price : seq[i].price;
    }
    cost += config.card_cost * static_cast<long>(cards);
    if (cost < best) best = cost;
  }
  return best;
}

}  // namespace bahnlab
