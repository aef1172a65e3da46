#include <catch2/catch_amalgamated.hpp>

#include "bahnlab/analysis.hpp"
#include "bahnlab/tight.hpp"
#include "helpers.hpp"

using namespace bahnlab;
using bahnlab::testing::mixed_instance;
using bahnlab::testing::random_sequence;
using bahnlab::testing::seq_of;

TEST_CASE("the PFSUM ratio bound hits its landmark values") {
  BahncardConfig cfg(100, Rat(4, 5), 10);
  Rat gamma = cfg.gamma();
  CHECK(cr_bound_pfsum(0, cfg) == Rat(2) / Rat(9, 5));                   // 2/(1+beta)
  CHECK(cr_bound_pfsum(gamma, cfg) == Rat(16, 5) / Rat(13, 5));          // (4-beta)/(1+2*beta)
  CHECK(cr_bound_pfsum(gamma * 1000000, cfg) < Rat(5, 4));               // below 1/beta
  CHECK(cr_bound_pfsum(gamma * 1000000, cfg) > Rat(5, 4) - Rat(1, 100  ));
  CHECK_THROWS_AS(cr_bound_pfsum(-1, cfg), std::invalid_argument);
}

TEST_CASE("the bound is continuous at eta = gamma and non-decreasing") {
  for (auto beta : {Rat(1, 5), Rat(3, 5), Rat(4, 5)}) {
    BahncardConfig cfg(100, beta, 10);
    Rat gamma = cfg.gamma();
    // both branch formulas agree at gamma
    Rat low = (2 * gamma + (2 - beta) * gamma) / ((1 + beta) * gamma + beta * gamma);
    Rat high = ((3 - beta) * gamma + gamma) / ((1 + beta) * gamma + beta * gamma);
    CHECK(low == high);
    Rat prev = 0;
    for (long k = 0; k <= 40; ++k) {
      Rat eta = gamma * k / 10;
      Rat v = cr_bound_pfsum(eta, cfg);
      CHECK(v >= prev);
      prev = v;
    }
  }
}

TEST_CASE("bound_for reflects what is proven about each rule") {
  BahncardConfig cfg(100, Rat(4, 5), 10);
  auto sum = bound_for(AlgorithmSpec::sum(), 123, cfg);
  CHECK(sum.kind == BoundInfo::Kind::upper);
  CHECK(*sum.value == Rat(6, 5));  // 2 - beta

  auto fsum0 = bound_for(AlgorithmSpec::fsum(), 0, cfg);
  CHECK(fsum0.kind == BoundInfo::Kind::upper);
  CHECK(*fsum0.value == Rat(10, 9));  // 2/(1+beta)
  CHECK(bound_for(AlgorithmSpec::fsum(), Rat(1, 1000), cfg).kind == BoundInfo::Kind::unbounded);

  auto sumw0 = bound_for(AlgorithmSpec::sum_w(5), 0, cfg);
  CHECK(sumw0.kind == BoundInfo::Kind::lower_bound_only);
  CHECK(*sumw0.value == Rat(11, 9));  // (3-beta)/(1+beta)
  CHECK(bound_for(AlgorithmSpec::sum_w(5), 1, cfg).kind == BoundInfo::Kind::unbounded);

  auto pf = bound_for(AlgorithmSpec::pfsum(), 250, cfg);
  CHECK(pf.kind == BoundInfo::Kind::upper);
  CHECK(*pf.value == cr_bound_pfsum(250, cfg));

  CHECK(bound_for(AlgorithmSpec::srl(Rat(1, 2)), 0, cfg).kind == BoundInfo::Kind::unavailable);
}

TEST_CASE("ratio report divides exactly and flags the bound") {
  BahncardConfig cfg(100, Rat(4, 5), 10);
  auto s = seq_of({{0, 30}});
  PerfectPredictor pred(s);
  auto trace = run_online(AlgorithmSpec::sum(), s, pred, cfg);
  auto opt = opt_dp(s, cfg);
  auto report = ratio_report(trace, opt, cfg);
  CHECK(report.ratio == 1);  // neither buys
  CHECK(report.within_bound);
  CHECK(report.eta == 0);
}

TEST_CASE("a zero-cost optimum is reported, not divided") {
  BahncardConfig cfg(100, Rat(4, 5), 10);
  auto s = seq_of({{0, 0}, {1, 0}});
  PerfectPredictor pred(s);
  auto trace = run_online(AlgorithmSpec::sum(), s, pred, cfg);
  auto opt = opt_dp(s, cfg);
  CHECK(opt.total_cost == 0);
  CHECK_THROWS_AS(ratio_report(trace, opt, cfg), ZeroOptError);
}

TEST_CASE("lemma checks pass on random PFSUM runs with perfect predictions") {
  BahncardConfig cfg(100, Rat(4, 5), 10);
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    auto s = mixed_instance(seed, 90);
    PerfectPredictor pred(s);
    auto trace = run_online(AlgorithmSpec::pfsum(), s, pred, cfg);
    auto violations = check_lemmas(trace, s, cfg);
    for (const auto& v : violations) UNSCOPED_INFO(v.message());
    CHECK(violations.empty());
  }
}

TEST_CASE("lemma checks pass under noisy predictions at the measured eta") {
  BahncardConfig cfg(100, Rat(3, 5), 10);
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    auto s = mixed_instance(seed, 90);
    PerturbationParams params{Rat((seed % 11) * 10, 100), PriceDist::pareto, mix64(seed, 5)};
    DerivedPredictor pred(perturb_instance(s, params, day_grid_for(90)));
    auto trace = run_online(AlgorithmSpec::pfsum(), s, pred, cfg);
    auto violations = check_lemmas(trace, s, cfg);
    for (const auto& v : violations) UNSCOPED_INFO(v.message());
    CHECK(violations.empty());
  }
}

TEST_CASE("a hand-broken on phase trips the on-phase floor check") {
  BahncardConfig cfg(100, Rat(4, 5), 10);  // gamma = 500
  auto s = seq_of({{0, 1}});
  RunTrace fake;
  fake.spec = AlgorithmSpec::pfsum();
  fake.schedule = {0};
  fake.reduced = {true};
  // perfect log entry, so eta = 0 and the on phase must carry >= gamma
  fake.prediction_log.push_back({0, Interval::closed_open(0, 10), 1, 1});
  auto violations = check_lemmas(fake, s, cfg);
  REQUIRE(violations.size() == 1);
  CHECK(violations[0].kind == LemmaKind::on_phase_floor);
  CHECK(violations[0].observed == 1);
  CHECK(violations[0].threshold == 500);
}

TEST_CASE("tight-instance traces carry an on phase of exactly gamma - eta") {
  BahncardConfig cfg(100, Rat(4, 5), 10);
  Rat gamma = cfg.gamma();
  Rat eta = gamma / 2;
  auto inst = tight_instance({TightPattern::P_IV, cfg, eta, gamma / 10000, 0, {}});
  ScriptedPredictor pred(inst.seq, inst.predictions);
  auto trace = run_online(inst.alg, inst.seq, pred, cfg);
  REQUIRE(trace.schedule.size() == 1);
  CHECK(measure_eta(trace.prediction_log) == eta);
  CHECK(check_lemmas(trace, inst.seq, cfg).empty());
  Rat on_cost = window_cost(inst.seq,
                            Interval::closed_open(trace.schedule[0], trace.schedule[0] + 10));
  CHECK(on_cost == gamma - eta);
}

TEST_CASE("interval costs add card purchases inside the interval only") {
  BahncardConfig cfg(10, Rat(1, 2), 5);
  auto s = seq_of({{0, 20}, {7, 30}});
  PerfectPredictor pred(s);
  auto trace = run_online(AlgorithmSpec::sum(), s, pred, cfg);  // buys at 0 and 7
  REQUIRE(trace.schedule == PurchaseSchedule{0, 7});
  CHECK(trace_interval_cost(trace, s, cfg, Interval::closed_open(0, 5)) == 10 + 10);
  CHECK(trace_interval_cost(trace, s, cfg, Interval::closed_open(5, 20)) == 10 + 15);
  auto opt = opt_dp(s, cfg);
  Rat whole = opt_interval_cost(opt, s, cfg, Interval::closed_open(0, 100));
  CHECK(whole == opt.total_cost);
}
