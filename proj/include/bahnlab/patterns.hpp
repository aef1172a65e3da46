#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bahnlab/algos.hpp"
#include "bahnlab/core.hpp"
#include "bahnlab/offline.hpp"

namespace bahnlab {

enum class PatternKind { I, II, III, IV, V, VI };

inline const char* to_string(PatternKind k) {
  switch (k) {
    case PatternKind::I: return "I";
    case PatternKind::II: return "II";
    case PatternKind::III: return "III";
    case PatternKind::IV: return "IV";
    case PatternKind::V: return "V";
    case PatternKind::VI: return "VI";
  }
  return "?";
}

struct PatternLabel {
  PatternKind kind;
  Interval interval;  // concerned time interval of the pattern
  // Number of OPT cards purchased in an on phase and expiring in the next on
  // phase (the x of patterns III to VI).
  std::size_t x = 0;
  bool augmented = false;  // VI only: last on phase carries regular cost >= gamma
  // For non-augmented VI: index of the label preceding it in time order (the
  // backtracking chains end at the first I/II/III/IV walking these links).
  std::optional<std::size_t> predecessor;
};

struct UnclassifiableError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Partitions every maximal interval in which PFSUM and/or OPT holds a valid
// card into pattern-shaped pieces. Cards purchased at the same instant by
// both form Pattern I; the rest are grouped into chains by strict interior
// overlap of their validity intervals (abutting intervals start a new piece).
inline std::vector<PatternLabel> classify_patterns(const RunTrace& pfsum_trace,
                                                   const OptSolution& opt,
                                                   const RequestSequence& seq,
                                                   const BahncardConfig& config) {
  const Rat& T = config.validity;
  Rat gamma = config.gamma();
  PrefixCost prefix(seq);

  for (std::size_t i = 1; i < opt.schedule.size(); ++i)
    if (opt.schedule[i] - opt.schedule[i - 1] < T)
      throw UnclassifiableError("OPT schedule has overlapping cards");

  struct Card {
    Rat start;
    Rat end;
    bool is_opt;
  };
  std::vector<Card> cards;
  std::vector<PatternLabel> labels;

  {
    std::size_t pi = 0, oi = 0;
    const auto& P = pfsum_trace.schedule;
    const auto& O = opt.schedule;
    while (pi < P.size() || oi < O.size()) {
      if (pi < P.size() && oi < O.size() && P[pi] == O[oi]) {
        // coincident purchase: exactly Pattern I on [mu, mu+T)
        labels.push_back(PatternLabel{PatternKind::I, Interval::closed_open(P[pi], P[pi] + T)});
        ++pi, ++oi;
      } else if (oi >= O.size() || (pi < P.size() && P[pi] < O[oi])) {
        cards.push_back(Card{P[pi], P[pi] + T, false});
        ++pi;
      } else {
        cards.push_back(Card{O[oi], O[oi] + T, true});
        ++oi;
      }
    }
  }
  std::sort(cards.begin(), cards.end(),
            [](const Card& a, const Card& b) { return a.start < b.start; });

  std::size_t i = 0;
  while (i < cards.size()) {
    std::size_t j = i + 1;
    Rat chain_end = cards[i].end;
    while (j < cards.size() && cards[j].start < chain_end) {
      chain_end = std::max(chain_end, cards[j].end);
      ++j;
    }

    std::size_t n_opt = 0, n_pfsum = 0;
    Rat max_opt_end = -1, max_pfsum_end = -1, last_pfsum_start = 0;
    for (std::size_t k = i; k < j; ++k) {
      if (cards[k].is_opt) {
        ++n_opt;
        max_opt_end = std::max(max_opt_end, cards[k].end);
      } else {
        ++n_pfsum;
        max_pfsum_end = std::max(max_pfsum_end, cards[k].end);
        last_pfsum_start = cards[k].start;
      }
    }
    // Phase membership is decided against this chain's own on phases; a card
    // expiring exactly where the next chain starts stays an on->off card here.
    auto in_chain_on_phase = [&](const Rat& t) {
      for (std::size_t k = i; k < j; ++k)
        if (!cards[k].is_opt && cards[k].start <= t && t < cards[k].end) return true;
      return false;
    };

    PatternLabel label;
    label.interval = Interval::closed_open(cards[i].start, chain_end);
    if (n_pfsum == 0) {
      if (n_opt != 1)
        throw UnclassifiableError("overlapping OPT cards in a PFSUM-free interval at " +
                                  label.interval.str());
      label.kind = PatternKind::II;
    } else {
      std::size_t x = 0;
      for (std::size_t k = i; k < j; ++k)
        if (cards[k].is_opt && in_chain_on_phase(cards[k].start) &&
            in_chain_on_phase(cards[k].end))
          ++x;
      label.x = x;
      bool starts_opt = cards[i].is_opt;
      bool ends_opt = max_opt_end > max_pfsum_end;
      if (starts_opt && in_chain_on_phase(cards[i].start))
        throw UnclassifiableError("leading OPT card starts inside an on phase at " +
                                  label.interval.str());
      std::size_t expected_opt = x + (starts_opt ? 1 : 0) + (ends_opt ? 1 : 0);
      if (n_opt != expected_opt)
        throw UnclassifiableError("OPT card count " + std::to_string(n_opt) +
                                  " does not match pattern shape at " + label.interval.str());
      if (starts_opt)
        label.kind = ends_opt ? PatternKind::III : PatternKind::IV;
      else
        label.kind = ends_opt ? PatternKind::V : PatternKind::VI;
      if (label.kind == PatternKind::VI)
        label.augmented =
            prefix.cost(Interval::closed_open(last_pfsum_start, last_pfsum_start + T)) >= gamma;
    }
    labels.push_back(std::move(label));
    i = j;
  }

  std::sort(labels.begin(), labels.end(),
            [](const PatternLabel& a, const PatternLabel& b) { return a.interval.lo < b.interval.lo; });
  for (std::size_t k = 0; k < labels.size(); ++k)
    if (labels[k].kind == PatternKind::VI && !labels[k].augmented && k > 0)
      labels[k].predecessor = k - 1;
  return labels;
}

}  // namespace bahnlab
