// bahnlab: run the online rules, compute offline optima, sweep experiments,
// verify the bound/lemma properties, and emit the tight instances.
//
//   bahnlab run   --algo PFSUM --input trips.csv --C 100 --beta 0.8 --T 10
//   bahnlab opt   --input trips.csv --C 100 --beta 0.8 --T 10
//   bahnlab sweep --config exp.json --out results.csv
//   bahnlab verify --seeds 1000 --C 100 --beta 0.8 --T 10
//   bahnlab tight --pattern P_V --C 100 --beta 0.8 --T 10 --eta 0

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "bahnlab/bahnlab.hpp"

using namespace bahnlab;

namespace {

struct ConfigArgs {
  std::string C = "100";
  std::string beta = "0.8";
  std::string T = "10";

  BahncardConfig build() const {
    return BahncardConfig(rat_from_string(C), rat_from_string(beta), rat_from_string(T));
  }
};

void add_config_options(CLI::App* app, ConfigArgs& args) {
  app->add_option("--C", args.C, "card cost");
  app->add_option("--beta", args.beta, "discount factor in [0,1)");
  app->add_option("--T", args.T, "card validity in days");
}

struct CliError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

AlgorithmSpec parse_algo(const std::string& name, const std::string& w, const std::string& lambda,
                         const std::string& grid_step) {
  AlgorithmSpec spec;
  if (name == "SUM")
    spec = AlgorithmSpec::sum();
  else if (name == "SUMW")
    spec = AlgorithmSpec::sum_w(rat_from_string(w));
  else if (name == "FSUM")
    spec = AlgorithmSpec::fsum();
  else if (name == "PFSUM")
    spec = AlgorithmSpec::pfsum();
  else if (name == "SRL")
    spec = AlgorithmSpec::srl(rat_from_string(lambda));
  else
    throw CliError("field '--algo': unknown algorithm '" + name + "'");
  if (spec.kind == AlgorithmKind::SRL && !grid_step.empty())
    spec.srl_grid_step = rat_from_string(grid_step);
  return spec;
}

int cmd_run(const ConfigArgs& cfg_args, const std::string& algo, const std::string& w,
            const std::string& lambda, const std::string& grid_step, const std::string& input,
            const std::string& profile, std::int64_t horizon, const std::string& dist,
            std::uint64_t gen_seed, const std::string& predictor, const std::string& p,
            std::uint64_t perturb_seed, const std::string& bias) {
  auto cfg = cfg_args.build();
  auto spec = parse_algo(algo, w, lambda, grid_step);
  spec.validate(cfg);

  RequestSequence seq;
  if (!input.empty()) {
    seq = load_sequence_file(input);
  } else {
    ProfileParams pp;
    pp.profile = profile == "occasional" ? Profile::occasional : Profile::commuter;
    pp.horizon_days = horizon;
    pp.price_dist = price_dist_from_string(dist);
    pp.rng_seed = gen_seed;
    seq = generate_instance(pp);
  }
  if (auto err = validate_sequence(seq)) throw CliError("input sequence: " + err->message());

  std::unique_ptr<Predictor> pred;
  json predictor_info;
  if (predictor == "perfect") {
    pred = std::make_unique<PerfectPredictor>(seq);
    predictor_info = {{"kind", "perfect"}};
  } else if (predictor == "derived") {
    PerturbationParams params;
    params.probability = rat_from_string(p);
    params.noise = price_dist_from_string(dist);
    params.rng_seed = perturb_seed;
    std::int64_t days = horizon;
    if (!seq.empty()) {
      Rat last = seq.back().time;
      if (denominator(last) != 1) throw CliError("derived predictor needs day-granular input");
      days = std::max<std::int64_t>(days, numerator(last).convert_to<std::int64_t>() + 1);
    }
    auto perturbed = perturb_instance(seq, params, day_grid_for(days));
    predictor_info = {{"kind", "derived"},
                      {"p", rat_to_string(params.probability)},
                      {"noise", to_string(params.noise)},
                      {"seed", params.rng_seed},
                      {"perturbed", sequence_to_json(perturbed)}};
    pred = std::make_unique<DerivedPredictor>(std::move(perturbed));
  } else if (predictor == "synthetic") {
    Rat b = rat_from_string(bias);
    pred = std::make_unique<SyntheticBiasPredictor>(seq, b);
    predictor_info = {{"kind", "synthetic"}, {"bias", rat_to_string(b)}};
  } else {
    throw CliError("field '--predictor': expected perfect|derived|synthetic");
  }

  auto trace = run_online(spec, seq, *pred, cfg);
  auto opt = opt_dp(seq, cfg);
  json out;
  out["predictor"] = predictor_info;
  out["trace"] = trace_to_json(trace, seq);
  out["opt"] = opt_to_json(opt);
  try {
    out["ratio_report"] = ratio_report_to_json(ratio_report(trace, opt, cfg));
  } catch (const ZeroOptError&) {
    out["ratio_report"] = {{"error", "ZeroOpt"}};
  }
  std::cout << out.dump(2) << "\n";
  return 0;
}

int cmd_opt(const ConfigArgs& cfg_args, const std::string& input) {
  auto cfg = cfg_args.build();
  auto seq = load_sequence_file(input);
  if (auto err = validate_sequence(seq)) throw CliError("input sequence: " + err->message());
  std::cout << opt_to_json(opt_dp(seq, cfg)).dump(2) << "\n";
  return 0;
}

int cmd_sweep(const std::string& config_path, const std::string& out_path,
              std::optional<std::uint64_t> seed_override) {
  std::ifstream in(config_path);
  if (!in) throw CliError("cannot open config " + config_path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw CliError("config json: " + std::string(e.what()));
  }
  auto ec = experiment_config_from_json(j);
  if (seed_override) ec.base_seed = *seed_override;
  auto result = run_experiment(ec);
  std::string csv = result_csv(result.rows);
  if (out_path.empty() || out_path == "-") {
    std::cout << csv;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw CliError("cannot write " + out_path);
    out << csv;
  }
  if (result.zero_opt_skips > 0)
    std::cerr << "note: " << result.zero_opt_skips << " run(s) skipped with ZeroOpt\n";
  return 0;
}

int cmd_verify(const ConfigArgs& cfg_args, int seeds, std::int64_t horizon) {
  auto cfg = cfg_args.build();
  int bound_bad = 0, lemma_bad = 0, consistency_bad = 0, sum_bad = 0, oracle_bad = 0;

  std::vector<int> bb(seeds, 0), lb(seeds, 0), cb(seeds, 0), sb(seeds, 0);
  parallel_for(static_cast<std::size_t>(seeds), [&](std::size_t i) {
    ProfileParams p;
    p.profile = (i % 2 == 0) ? Profile::commuter : Profile::occasional;
    p.price_dist = static_cast<PriceDist>((i / 2) % 3);
    p.horizon_days = horizon;
    p.rng_seed = mix64(0x5eed, i);
    auto seq = generate_instance(p);
    auto opt = opt_dp(seq, cfg);
    if (opt.total_cost == 0) return;

    PerturbationParams params;
    params.probability = Rat(static_cast<long>(i % 11), 10);
    params.noise = p.price_dist;
    params.rng_seed = mix64(0xfeed, i);
    DerivedPredictor noisy(perturb_instance(seq, params, day_grid_for(horizon)));
    auto trace = run_online(AlgorithmSpec::pfsum(), seq, noisy, cfg);
    Rat eta = measure_eta(trace.prediction_log);
    if (trace.ledger.total() / opt.total_cost > cr_bound_pfsum(eta, cfg)) {
      bb[i] = 1;
      std::fprintf(stderr, "seed %zu: ratio %s exceeds bound %s at eta %s\n", i,
                   rat_to_string(trace.ledger.total() / opt.total_cost).c_str(),
                   rat_to_string(cr_bound_pfsum(eta, cfg)).c_str(), rat_to_string(eta).c_str());
    }
    auto violations = check_lemmas(trace, seq, cfg);
    if (!violations.empty()) {
      lb[i] = 1;
      for (const auto& v : violations)
        std::fprintf(stderr, "seed %zu: %s\n", i, v.message().c_str());
    }

    PerfectPredictor perfect(seq);
    Rat consistency = 2 / (1 + cfg.discount);
    if (run_online(AlgorithmSpec::pfsum(), seq, perfect, cfg).ledger.total() / opt.total_cost >
            consistency ||
        run_online(AlgorithmSpec::fsum(), seq, perfect, cfg).ledger.total() / opt.total_cost >
            consistency)
      cb[i] = 1;
    if (run_online(AlgorithmSpec::sum(), seq, perfect, cfg).ledger.total() / opt.total_cost >
        2 - cfg.discount)
      sb[i] = 1;
  });
  for (int i = 0; i < seeds; ++i) {
    bound_bad += bb[i];
    lemma_bad += lb[i];
    consistency_bad += cb[i];
    sum_bad += sb[i];
  }

  int oracle_checks = std::min(seeds, 200);
  std::vector<int> ob(oracle_checks, 0);
  parallel_for(static_cast<std::size_t>(oracle_checks), [&](std::size_t i) {
    ProfileParams p;
    p.profile = (i % 2 == 0) ? Profile::commuter : Profile::occasional;
    p.price_dist = static_cast<PriceDist>(i % 3);
    p.horizon_days = 10;
    p.rng_seed = mix64(0x0c1e, i);
    auto seq = generate_instance(p);
    if (opt_dp(seq, cfg).total_cost != opt_bruteforce(seq, cfg)) ob[i] = 1;
  });
  for (int v : ob) oracle_bad += v;

  std::printf("ratio bound:   %d violations / %d runs\n", bound_bad, seeds);
  std::printf("lemma checks:  %d violations / %d runs\n", lemma_bad, seeds);
  std::printf("consistency:   %d violations / %d runs\n", consistency_bad, seeds);
  std::printf("SUM bound:     %d violations / %d runs\n", sum_bad, seeds);
  std::printf("offline oracle: %d mismatches / %d instances\n", oracle_bad, oracle_checks);
  int bad = bound_bad + lemma_bad + consistency_bad + sum_bad + oracle_bad;
  std::printf(bad == 0 ? "verify: OK\n" : "verify: FAILED\n");
  return bad == 0 ? 0 : 1;
}

int cmd_tight(const ConfigArgs& cfg_args, const std::string& pattern, const std::string& eta,
              const std::string& epsilon, std::size_t x, const std::string& w,
              const std::string& tolerance) {
  auto cfg = cfg_args.build();
  auto pat = tight_pattern_from_string(pattern);
  if (!pat) throw CliError("field '--pattern': expected SUMW_LB|P_III|P_IV|P_V|P6");
  TightInstanceSpec spec{*pat, cfg, rat_from_string(eta),
                         epsilon.empty() ? cfg.gamma() / 10000 : rat_from_string(epsilon), x, {}};
  if (!w.empty()) spec.sumw_window = rat_from_string(w);
  auto inst = tight_instance(spec);

  ScriptedPredictor pred(inst.seq, inst.predictions);
  auto trace = run_online(inst.alg, inst.seq, pred, cfg);
  auto opt = opt_dp(inst.seq, cfg);
  Rat alg_cost = trace_interval_cost(trace, inst.seq, cfg, inst.concern);
  Rat opt_cost = opt_interval_cost(opt, inst.seq, cfg, inst.concern);
  if (opt_cost == 0) throw CliError("tight instance yielded a zero OPT interval cost");
  Rat achieved = alg_cost / opt_cost;
  Rat tol = rat_from_string(tolerance);
  Rat diff = achieved >= inst.expected_ratio ? achieved - inst.expected_ratio
                                             : inst.expected_ratio - achieved;
  bool ok = diff <= inst.expected_ratio * tol;

  json out;
  out["pattern"] = pattern;
  out["sequence"] = sequence_to_json(inst.seq);
  json preds = json::object();
  for (const auto& [t, v] : inst.predictions) preds[rat_to_string(t)] = rat_to_string(v);
  out["predictions"] = preds;
  out["algorithm"] = inst.alg.id();
  out["concerned_interval"] = interval_to_json(inst.concern);
  out["expected_ratio"] = rat_to_string(inst.expected_ratio);
  out["expected_ratio_decimal"] = rat_to_double(inst.expected_ratio);
  out["achieved_ratio"] = rat_to_string(achieved);
  out["achieved_ratio_decimal"] = rat_to_double(achieved);
  out["full_ratio_decimal"] =
      opt.total_cost == 0 ? 0.0 : rat_to_double(trace.ledger.total() / opt.total_cost);
  out["measured_eta"] = rat_to_string(measure_eta(trace.prediction_log));
  out["within_tolerance"] = ok;
  std::cout << out.dump(2) << "\n";
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bahnlab: learning-augmented Bahncard decision rules laboratory"};
  app.require_subcommand(1);

  // run
  auto* run = app.add_subcommand("run", "run one algorithm over one instance");
  ConfigArgs run_cfg;
  add_config_options(run, run_cfg);
  std::string algo = "PFSUM", w = "5", lambda = "0.5", grid_step, input;
  std::string profile = "commuter", dist = "normal", predictor = "perfect", p = "0.3";
  std::string bias = "0";
  std::int64_t horizon = 2000;
  std::uint64_t gen_seed = 0, perturb_seed = 0;
  run->add_option("--algo", algo, "SUM|SUMW|FSUM|PFSUM|SRL");
  run->add_option("--w", w, "SUMW prediction window");
  run->add_option("--lambda", lambda, "SRL hyper-parameter");
  run->add_option("--srl-grid-step", grid_step, "SRL dense-grid candidate step");
  run->add_option("--input", input, "sequence file (.csv or .json)");
  run->add_option("--profile", profile, "generator profile: commuter|occasional");
  run->add_option("--horizon", horizon, "generator horizon in days");
  run->add_option("--dist", dist, "price distribution: uniform|normal|pareto");
  run->add_option("--gen-seed", gen_seed, "generator seed");
  run->add_option("--predictor", predictor, "perfect|derived|synthetic");
  run->add_option("--p", p, "perturbation probability (derived)");
  run->add_option("--perturb-seed", perturb_seed, "perturbation seed (derived)");
  run->add_option("--bias", bias, "additive forecast bias (synthetic)");

  // opt
  auto* opt_cmd = app.add_subcommand("opt", "print the offline optimum for an instance");
  ConfigArgs opt_cfg;
  add_config_options(opt_cmd, opt_cfg);
  std::string opt_input;
  opt_cmd->add_option("--input", opt_input, "sequence file (.csv or .json)")->required();

  // sweep
  auto* sweep = app.add_subcommand("sweep", "run an experiment sweep from a JSON config");
  std::string sweep_config, sweep_out = "-";
  std::uint64_t sweep_seed = 0;
  bool sweep_seed_set = false;
  sweep->add_option("--config", sweep_config, "experiment config JSON")->required();
  sweep->add_option("--out", sweep_out, "output CSV path ('-' for stdout)");
  sweep->add_option("--seed", sweep_seed, "override the config's base seed")
      ->each([&](const std::string&) { sweep_seed_set = true; });

  // verify
  auto* verify = app.add_subcommand("verify", "run the bound/lemma property suites");
  ConfigArgs verify_cfg;
  add_config_options(verify, verify_cfg);
  int verify_seeds = 200;
  std::int64_t verify_horizon = 365;
  verify->add_option("--seeds", verify_seeds, "number of seeded runs");
  verify->add_option("--horizon", verify_horizon, "instance horizon in days");

  // tight
  auto* tight = app.add_subcommand("tight", "emit and evaluate a tight instance");
  ConfigArgs tight_cfg;
  add_config_options(tight, tight_cfg);
  std::string pattern, eta = "0", epsilon, tight_w, tolerance = "1/100";
  std::size_t tight_x = 1;
  tight->add_option("--pattern", pattern, "SUMW_LB|P_III|P_IV|P_V|P6")->required();
  tight->add_option("--eta", eta, "design prediction error");
  tight->add_option("--epsilon", epsilon, "construction slack (default gamma/10^4)");
  tight->add_option("--x", tight_x, "chain length (P_III)");
  tight->add_option("--w", tight_w, "prediction window (SUMW_LB)");
  tight->add_option("--tolerance", tolerance, "relative tolerance for the achieved ratio");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (run->parsed())
      return cmd_run(run_cfg, algo, w, lambda, grid_step, input, profile, horizon, dist, gen_seed,
                     predictor, p, perturb_seed, bias);
    if (opt_cmd->parsed()) return cmd_opt(opt_cfg, opt_input);
    if (sweep->parsed())
      return cmd_sweep(sweep_config, sweep_out,
                       sweep_seed_set ? std::optional<std::uint64_t>(sweep_seed) : std::nullopt);
    if (verify->parsed()) return cmd_verify(verify_cfg, verify_seeds, verify_horizon);
    if (tight->parsed())
      return cmd_tight(tight_cfg, pattern, eta, epsilon, tight_x, tight_w, tolerance);
  } catch (const CliError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const RegimeMismatchError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
