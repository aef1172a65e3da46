#pragma once

#include <initializer_list>
#include <utility>

#include "bahnlab/core.hpp"
#include "bahnlab/generate.hpp"
#include "bahnlab/rng.hpp"

namespace bahnlab::testing {

inline RequestSequence seq_of(std::initializer_list<std::pair<Rat, Rat>> items) {
  RequestSequence s;
  for (const auto& [t, p] : items) s.push_back(TravelRequest{t, p});
  return s;
}

// Small random instance with rational times and cent prices.
inline RequestSequence random_sequence(Rng& rng, int n, long max_gap_num = 40,
                                       long max_price_cents = 8000) {
  RequestSequence s;
  Rat t = 0;
  for (int i = 0; i < n; ++i) {
    t += Rat(static_cast<long>(rng.next_u64() % static_cast<unsigned long>(max_gap_num)) + 1, 8);
    s.push_back(TravelRequest{
        t, Rat(static_cast<long>(rng.next_u64() % static_cast<unsigned long>(max_price_cents)),
               100)});
  }
  return s;
}

// Day-granular instance via the generators, cycling profiles/distributions.
inline RequestSequence mixed_instance(std::uint64_t seed, std::int64_t horizon) {
  ProfileParams p;
  p.profile = (seed % 2 == 0) ? Profile::commuter : Profile::occasional;
  p.price_dist = static_cast<PriceDist>((seed / 2) % 3);
  p.horizon_days = horizon;
  p.rng_seed = mix64(seed, 0xbeef);
  return generate_instance(p);
}

}  // namespace bahnlab::testing
