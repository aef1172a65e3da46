#pragma once

#include <cmath>
#include <cstdint>

#include "bahnlab/core.hpp"
#include "bahnlab/rng.hpp"

namespace bahnlab {

enum class Profile { commuter, occasional };

inline const char* to_string(Profile p) {
  return p == Profile::commuter ? "commuter" : "occasional";
}

struct ProfileParams {
  Profile profile = Profile::commuter;
  std::int64_t horizon_days = 2000;
  Rat gap_mean = 2;  // occasional travelers: mean of the exponential day gap
  PriceDist price_dist = PriceDist::normal;
  std::uint64_t rng_seed = 0;
};

// Commuters: one request on every day 0..horizon-1. Occasional travelers:
// the first request on day 0, then day gaps ceil(Exp(gap_mean)) >= 1. Prices
// are i.i.d. from the chosen distribution, quantized to cents. Draw order is
// one gap draw (occasional) then one price draw per request.
inline RequestSequence generate_instance(const ProfileParams& params) {
  if (params.horizon_days < 1) throw std::invalid_argument("horizon must be at least one day");
  if (params.profile == Profile::occasional && params.gap_mean <= 0)
    throw std::invalid_argument("gap mean must be positive");
  Rng rng(params.rng_seed);
  RequestSequence seq;
  if (params.profile == Profile::commuter) {
    seq.reserve(static_cast<std::size_t>(params.horizon_days));
    for (std::int64_t d = 0; d < params.horizon_days; ++d)
      seq.push_back(TravelRequest{Rat(d), quantize_price(sample_price(rng, params.price_dist))});
  } else {
    double mean = rat_to_double(params.gap_mean);
    std::int64_t day = 0;
    while (day < params.horizon_days) {
      seq.push_back(TravelRequest{Rat(day), quantize_price(sample_price(rng, params.price_dist))});
      double gap = sample_exp(rng, mean);
      std::int64_t whole = static_cast<std::int64_t>(std::ceil(gap));
      day += whole < 1 ? 1 : whole;
    }
  }
  return seq;
}

}  // namespace bahnlab
