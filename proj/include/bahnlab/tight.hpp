#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include "bahnlab/algos.hpp"
#include "bahnlab/analysis.hpp"
#include "bahnlab/core.hpp"

namespace bahnlab {

// The lower-bound constructions: SUMW_LB drives SUM_w at consistency
// (3-beta)/(1+beta); P_III/P_IV/P_V/P6 drive PFSUM to its ratio bound via the
// corresponding pattern shape.
enum class TightPattern { SUMW_LB, P_III, P_IV, P_V, P6 };

inline const char* to_string(TightPattern p) {
  switch (p) {
    case TightPattern::SUMW_LB: return "SUMW_LB";
    case TightPattern::P_III: return "P_III";
    case TightPattern::P_IV: return "P_IV";
    case TightPattern::P_V: return "P_V";
    case TightPattern::P6: return "P6";
  }
  return "?";
}

inline std::optional<TightPattern> tight_pattern_from_string(const std::string& s) {
  if (s == "SUMW_LB") return TightPattern::SUMW_LB;
  if (s == "P_III") return TightPattern::P_III;
  if (s == "P_IV") return TightPattern::P_IV;
  if (s == "P_V") return TightPattern::P_V;
  if (s == "P6") return TightPattern::P6;
  return std::nullopt;
}

struct TightInstanceSpec {
  TightPattern pattern;
  BahncardConfig config;
  Rat eta = 0;
  Rat epsilon = 0;          // the "approached, not attained" slack
  std::size_t x = 0;        // P_III chain length (P6 is the x=1 shape)
  std::optional<Rat> sumw_window;  // SUMW_LB only; defaults to T/2
};

struct RegimeMismatchError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A concrete instance realizing a target profile of interval sums.
// `predictions` maps
// decision times to scripted forecast values (every entry is within eta of
// the true window cost); `concern` is the interval the ratio statement is
// about; `expected_ratio` is the limit approached as epsilon -> 0.
struct TightInstance {
  RequestSequence seq;
  std::map<Rat, Rat> predictions;
  AlgorithmSpec alg;
  Interval concern;
  Rat expected_ratio;
  Rat horizon;
};

namespace detail {

inline void push(RequestSequence& seq, Rat t, Rat p) {
  seq.push_back(TravelRequest{std::move(t), std::move(p)});
}

// Scripted forecast for the T-future window at t, offset from the true cost
// by +eta, -eta (clamped at 0), or exact.
struct Scripter {
  const RequestSequence& seq;
  const Rat& T;
  const Rat& eta;
  std::map<Rat, Rat>& out;

  Rat truth(const Rat& t) const { return window_cost(seq, Interval::closed_open(t, t + T)); }
  void over(const Rat& t) { out[t] = truth(t) + eta; }
  void under(const Rat& t) {
    Rat v = truth(t) - eta;
    out[t] = v < 0 ? Rat(0) : v;
  }
};

inline TightInstance make_sumw_lb(const TightInstanceSpec& s) {
  const auto& cfg = s.config;
  Rat gamma = cfg.gamma();
  const Rat& T = cfg.validity;
  const Rat& eps = s.epsilon;
  if (eps <= 0 || eps >= gamma / 4) throw RegimeMismatchError("SUMW_LB needs 0 < epsilon < gamma/4");
  if (s.eta != 0) throw RegimeMismatchError("SUMW_LB is a consistency bound; eta must be 0");
  Rat w = s.sumw_window.value_or(T / 2);
  if (w <= 0 || w >= T) throw RegimeMismatchError("SUMW_LB needs 0 < w < T");
  Rat m = std::min(w, T - w) / 2;

  TightInstance out;
  push(out.seq, 0, eps);
  push(out.seq, w, gamma - eps);
  push(out.seq, T + m / 2, gamma - 2 * eps);
  push(out.seq, T + m, eps);
  push(out.seq, T + m + w, eps);
  out.alg = AlgorithmSpec::sum_w(w);
  out.horizon = T + m + w + T;
  out.concern = Interval::closed_open(0, out.horizon);
  const Rat& beta = cfg.discount;
  out.expected_ratio = (3 - beta) / (1 + beta);
  return out;
}

inline TightInstance make_p_iv(const TightInstanceSpec& s) {
  const auto& cfg = s.config;
  Rat gamma = cfg.gamma();
  const Rat& T = cfg.validity;
  const Rat& eps = s.epsilon;
  const Rat& eta = s.eta;
  if (eps <= 0 || eps >= gamma / 2) throw RegimeMismatchError("P_IV needs 0 < epsilon < gamma/2");
  if (eta < 0) throw RegimeMismatchError("P_IV needs eta >= 0");

  Rat a1 = T / 4, a2 = 3 * T / 8, mu = T / 2;
  TightInstance out;
  if (eta <= gamma) {
    // s_{-1} -> gamma + 2*eta split so no prefix triggers a purchase,
    // s_0 = gamma - eta at the purchase, s_1 = 0.
    push(out.seq, a1, gamma - eps / 2);
    if (2 * eta - eps / 2 > 0) push(out.seq, a2, 2 * eta - eps / 2);
    push(out.seq, mu, gamma - eta);
  } else {
    // s_{-1} -> 2*gamma + eta, s_0 = s_1 = 0.
    push(out.seq, a1, gamma - eps / 4);
    push(out.seq, a2, gamma + eta - 3 * eps / 4);
    push(out.seq, mu, eps / 4);
  }
  Scripter sc{out.seq, T, eta, out.predictions};
  sc.under(a1);
  if (out.seq.size() == 3) sc.under(a2);
  sc.over(mu);

  out.alg = AlgorithmSpec::pfsum();
  out.concern = Interval::closed_open(a1, mu + T);
  out.horizon = mu + T;
  out.expected_ratio = cr_bound_pfsum(eta, cfg);
  return out;
}

inline TightInstance make_p_v(const TightInstanceSpec& s) {
  const auto& cfg = s.config;
  Rat gamma = cfg.gamma();
  const Rat& T = cfg.validity;
  const Rat& eps = s.epsilon;
  const Rat& eta = s.eta;
  if (eps <= 0 || eps >= gamma / 2) throw RegimeMismatchError("P_V needs 0 < epsilon < gamma/2");
  if (eta < 0) throw RegimeMismatchError("P_V needs eta >= 0");

  Rat r0 = T / 2, mu = T, tau = 3 * T / 2;
  Rat u1 = 2 * T + T / 8, u2 = 2 * T + T / 4;

  TightInstance out;
  push(out.seq, r0, gamma - eps);  // trigger mass, outside the concerned interval
  push(out.seq, mu, eps);          // s_1 -> 0
  if (eta <= gamma) {
    push(out.seq, tau, gamma - eta);  // s_2
    if (eta - eps / 2 > 0) push(out.seq, u1, eta - eps / 2);
    push(out.seq, u2, gamma + eta - eps / 2);  // s_3 -> gamma + 2*eta
  } else {
    push(out.seq, tau, eps / 4);  // s_2 = 0
    push(out.seq, u1, gamma - eps / 2);
    push(out.seq, u2, gamma + eta - eps / 2);  // s_3 -> 2*gamma + eta
  }
  Scripter sc{out.seq, T, eta, out.predictions};
  sc.under(r0);
  sc.over(mu);
  for (const auto& r : out.seq)
    if (r.time == u1) sc.under(u1);
  sc.under(u2);

  out.alg = AlgorithmSpec::pfsum();
  out.concern = Interval::closed_open(mu, tau + T);
  out.horizon = tau + T;
  out.expected_ratio = cr_bound_pfsum(eta, cfg);
  return out;
}

inline TightInstance make_p6(const TightInstanceSpec& s) {
  const auto& cfg = s.config;
  Rat gamma = cfg.gamma();
  const Rat& T = cfg.validity;
  const Rat& eps = s.epsilon;
  const Rat& eta = s.eta;
  if (eps <= 0 || eps >= gamma / 8) throw RegimeMismatchError("P6 needs 0 < epsilon < gamma/8");
  if (s.x > 1) throw RegimeMismatchError("P6 realizes the x = 1 shape");
  if (eta != 0 && eta < eps)
    throw RegimeMismatchError("P6 needs eta = 0 or eta >= epsilon");

  Rat r0 = T / 2, mu1 = T, tau = 3 * T / 2;
  Rat w1 = 2 * T + T / 16, w2 = 2 * T + T / 8;
  Rat mu2 = 9 * T / 4, v = 19 * T / 8;

  TightInstance out;
  push(out.seq, r0, gamma - eps);
  push(out.seq, mu1, eps);  // s_1 -> 0
  if (eta <= gamma) {
    push(out.seq, tau, gamma - eta);  // s_2
    if (eta >= eps) {                 // s_3 -> 2*eta, split below the purchase thresholds
      push(out.seq, w1, eta - eps / 2);
      push(out.seq, w2, eta - eps / 2);
    }
  } else {
    push(out.seq, tau, eps / 8);  // s_2 = 0
    push(out.seq, w1, gamma - eps / 4);
    push(out.seq, w2, eta - 3 * eps / 4);  // s_3 -> gamma + eta
  }
  push(out.seq, mu2, eps / 4);
  push(out.seq, v, gamma - eps / 4);  // s_4 = gamma exactly (augmented)

  Scripter sc{out.seq, T, eta, out.predictions};
  sc.under(r0);
  sc.over(mu1);
  for (const auto& r : out.seq) {
    if (r.time == w1) sc.under(w1);
    if (r.time == w2) sc.under(w2);
  }

  out.alg = AlgorithmSpec::pfsum();
  out.concern = Interval::closed_open(mu1, mu2 + T);
  out.horizon = mu2 + T;
  out.expected_ratio = cr_bound_pfsum(eta, cfg);
  return out;
}

inline TightInstance make_p_iii(const TightInstanceSpec& s) {
  const auto& cfg = s.config;
  Rat gamma = cfg.gamma();
  const Rat& T = cfg.validity;
  const Rat& eps = s.epsilon;
  const Rat& eta = s.eta;
  const std::size_t x = s.x;
  if (eps <= 0 || eps >= gamma / 8) throw RegimeMismatchError("P_III needs 0 < epsilon < gamma/8");
  if (eta < 0) throw RegimeMismatchError("P_III needs eta >= 0");
  if (x >= 1 && eta <= gamma && eta < eps)
    throw RegimeMismatchError(
        "P_III with x >= 1 needs eta >= epsilon: the middle off clusters carry gamma + 2*eta, "
        "which only exceeds OPT's break-even for positive eta");

  const bool low = eta <= gamma;
  Rat period = 3 * T / 2;  // on phase T + off phase T/2
  auto mu = [&](std::size_t k) { return T + period * static_cast<long>(k); };
  Rat dt = eps / 4;  // purchase-anchor requests for OPT's on-phase cards

  TightInstance out;
  std::vector<Rat> buy_times, under_times, silent_times;

  // First off cluster (in E_0), total gamma + 2*eta (low) or 2*gamma + eta.
  Rat A = 3 * T / 4, B = 7 * T / 8;
  push(out.seq, A, gamma - eps / 2);
  silent_times.push_back(A);
  Rat b_price = low ? 2 * eta - eps / 2 : gamma + eta - eps / 2;
  if (b_price > 0) {
    push(out.seq, B, b_price);
    under_times.push_back(B);
  }

  for (std::size_t k = 0; k <= x; ++k) {
    push(out.seq, mu(k), low ? gamma - eta : eps / 8);  // PFSUM purchase anchor
    buy_times.push_back(mu(k));
    push(out.seq, mu(k) + 3 * T / 4, dt);  // OPT purchase anchor (inside the on phase)
    if (k < x) {
      // middle off cluster, total gamma + 2*eta (low) or 2*gamma + eta
      push(out.seq, mu(k) + 9 * T / 8, gamma - eps / 2);
      silent_times.push_back(mu(k) + 9 * T / 8);
      push(out.seq, mu(k) + 5 * T / 4, low ? 2 * eta - eps / 2 : gamma + eta - eps / 2);
      under_times.push_back(mu(k) + 5 * T / 4);
    }
  }
  // Trailing off cluster, total 2*gamma + eta.
  push(out.seq, mu(x) + 9 * T / 8, gamma - eps / 2);
  silent_times.push_back(mu(x) + 9 * T / 8);
  push(out.seq, mu(x) + 5 * T / 4, gamma + eta - eps / 2);
  under_times.push_back(mu(x) + 5 * T / 4);

  std::sort(out.seq.begin(), out.seq.end(),
            [](const TravelRequest& a, const TravelRequest& b) { return a.time < b.time; });

  Scripter sc{out.seq, T, eta, out.predictions};
  for (const auto& t : buy_times) sc.over(t);
  for (const auto& t : under_times) sc.under(t);
  for (const auto& t : silent_times) sc.under(t);

  out.alg = AlgorithmSpec::pfsum();
  out.concern = Interval::closed_open(A, mu(x) + 3 * T / 4 + T);
  out.horizon = mu(x) + 3 * T / 4 + T;

  const Rat& beta = cfg.discount;
  Rat xr(static_cast<long>(x));
  Rat den = (xr + 2) * ((1 + beta) * gamma + beta * eta);
  Rat num = low ? xr * (2 * gamma + (2 - beta) * eta) + (4 * gamma + (3 - beta) * eta)
                : (xr + 1) * cfg.card_cost + (xr + 2) * (2 * gamma + eta);
  out.expected_ratio = num / den;
  return out;
}

}  // namespace detail

inline TightInstance tight_instance(const TightInstanceSpec& s) {
  switch (s.pattern) {
    case TightPattern::SUMW_LB: return detail::make_sumw_lb(s);
    case TightPattern::P_III: return detail::make_p_iii(s);
    case TightPattern::P_IV: return detail::make_p_iv(s);
    case TightPattern::P_V: return detail::make_p_v(s);
    case TightPattern::P6: return detail::make_p6(s);
  }
  throw std::logic_error("unknown tight pattern");
}

// Single request (0, p) with a predictor biased up by gamma: FSUM and SUM_w
// buy on the phantom forecast and pay (C + beta*p)/p times OPT, exceeding
// min_ratio; PFSUM's recent-cost condition keeps it at ratio 1.
struct RobustnessInstance {
  RequestSequence seq;
  Rat predictor_bias;  // use with SyntheticBiasPredictor
  Rat fsum_ratio;      // (C + beta*p)/p
};

inline RobustnessInstance robustness_instance(const BahncardConfig& config,
                                              const Rat& min_ratio) {
  if (min_ratio <= 0) throw std::invalid_argument("min_ratio must be positive");
  RobustnessInstance out;
  Rat price = config.card_cost / (2 * min_ratio);
  out.seq.push_back(TravelRequest{Rat(0), price});
  out.predictor_bias = config.gamma();
  out.fsum_ratio = (config.card_cost + config.discount * price) / price;
  return out;
}

}  // namespace bahnlab
