#pragma once

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "bahnlab/algos.hpp"
#include "bahnlab/analysis.hpp"
#include "bahnlab/experiment.hpp"
#include "bahnlab/patterns.hpp"
#include "bahnlab/offline.hpp"

namespace bahnlab {

using json = nlohmann::json;

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Rationals arrive as strings ("0.8", "4/5"), integers, or (discouraged)
// floating numbers, which are converted through their shortest decimal form.
inline Rat rat_from_json(const json& j, const std::string& field) {
  if (j.is_string()) {
    auto r = try_parse_rat(j.get<std::string>());
    if (!r) throw ParseError("field '" + field + "': not a rational: " + j.dump());
    return *r;
  }
  if (j.is_number_integer()) return Rat(j.get<std::int64_t>());
  if (j.is_number_unsigned()) return Rat(j.get<std::uint64_t>());
  if (j.is_number_float()) {
    auto r = try_parse_rat(j.dump());
    if (!r) throw ParseError("field '" + field + "': not a rational: " + j.dump());
    return *r;
  }
  throw ParseError("field '" + field + "': expected a rational, got " + j.dump());
}

// ---- request sequences ----------------------------------------------------

inline void write_sequence_csv(std::ostream& os, const RequestSequence& seq) {
  os << "time,price\n";
  for (const auto& r : seq) os << rat_to_string(r.time) << "," << rat_to_string(r.price) << "\n";
}

inline RequestSequence read_sequence_csv(std::istream& is) {
  RequestSequence seq;
  std::string line;
  bool first = true;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (first && line.rfind("time", 0) == 0) {
      first = false;
      continue;
    }
    first = false;
    auto comma = line.find(',');
    if (comma == std::string::npos)
      throw ParseError("csv line " + std::to_string(lineno) + ": expected 'time,price'");
    auto t = try_parse_rat(line.substr(0, comma));
    auto p = try_parse_rat(line.substr(comma + 1));
    if (!t || !p) throw ParseError("csv line " + std::to_string(lineno) + ": bad rational");
    seq.push_back(TravelRequest{*t, *p});
  }
  return seq;
}

inline json sequence_to_json(const RequestSequence& seq) {
  json arr = json::array();
  for (const auto& r : seq)
    arr.push_back({{"time", rat_to_string(r.time)}, {"price", rat_to_string(r.price)}});
  return arr;
}

inline RequestSequence sequence_from_json(const json& arr) {
  if (!arr.is_array()) throw ParseError("sequence: expected a JSON array");
  RequestSequence seq;
  for (const auto& item : arr) {
    if (!item.contains("time") || !item.contains("price"))
      throw ParseError("sequence: each entry needs 'time' and 'price'");
    seq.push_back(TravelRequest{rat_from_json(item["time"], "time"),
                                rat_from_json(item["price"], "price")});
  }
  return seq;
}

inline RequestSequence load_sequence_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  if (path.size() >= 5 && path.substr(path.size() - 5) == ".json") {
    json j;
    in >> j;
    return sequence_from_json(j);
  }
  return read_sequence_csv(in);
}

// ---- traces, reports ------------------------------------------------------

inline json interval_to_json(const Interval& w) {
  return {{"lo", rat_to_string(w.lo)},
          {"hi", rat_to_string(w.hi)},
          {"lo_closed", w.lo_closed},
          {"hi_closed", w.hi_closed}};
}

inline json trace_to_json(const RunTrace& trace, const RequestSequence& seq) {
  json j;
  j["algorithm"] = trace.spec.id();
  json sched = json::array();
  for (const auto& mu : trace.schedule) sched.push_back(rat_to_string(mu));
  j["purchases"] = sched;
  json cls = json::array();
  for (std::size_t i = 0; i < seq.size(); ++i)
    cls.push_back({{"time", rat_to_string(seq[i].time)},
                   {"price", rat_to_string(seq[i].price)},
                   {"classification", trace.reduced[i] ? "reduced" : "regular"}});
  j["requests"] = cls;
  j["ledger"] = {{"cards_bought", trace.ledger.cards_bought},
                 {"card_cost_total", rat_to_string(trace.ledger.card_cost_total)},
                 {"reduced_ticket_total", rat_to_string(trace.ledger.reduced_ticket_total)},
                 {"regular_ticket_total", rat_to_string(trace.ledger.regular_ticket_total)},
                 {"total", rat_to_string(trace.ledger.total())}};
  json log = json::array();
  for (const auto& q : trace.prediction_log)
    log.push_back({{"time", rat_to_string(q.time)},
                   {"window", interval_to_json(q.window)},
                   {"predicted", rat_to_string(q.predicted)},
                   {"actual", rat_to_string(q.actual)}});
  j["prediction_log"] = log;
  return j;
}

inline json opt_to_json(const OptSolution& opt) {
  json j;
  j["total_cost"] = rat_to_string(opt.total_cost);
  json sched = json::array();
  for (const auto& tau : opt.schedule) sched.push_back(rat_to_string(tau));
  j["purchases"] = sched;
  json per = json::array();
  for (const auto& c : opt.per_request_cost) per.push_back(rat_to_string(c));
  j["per_request_cost"] = per;
  return j;
}

inline json ratio_report_to_json(const RatioReport& r) {
  json j;
  j["alg_cost"] = rat_to_string(r.alg_cost);
  j["opt_cost"] = rat_to_string(r.opt_cost);
  j["ratio"] = rat_to_string(r.ratio);
  j["ratio_decimal"] = rat_to_double(r.ratio);
  j["eta"] = rat_to_string(r.eta);
  switch (r.bound.kind) {
    case BoundInfo::Kind::upper: j["bound"] = rat_to_string(*r.bound.value); break;
    case BoundInfo::Kind::lower_bound_only:
      j["bound"] = nullptr;
      j["lower_bound"] = rat_to_string(*r.bound.value);
      break;
    case BoundInfo::Kind::unbounded: j["bound"] = "unbounded"; break;
    case BoundInfo::Kind::unavailable: j["bound"] = nullptr; break;
  }
  j["within_bound"] = r.within_bound;
  return j;
}

inline json labels_to_json(const std::vector<PatternLabel>& labels) {
  json arr = json::array();
  for (const auto& l : labels) {
    json j = {{"kind", to_string(l.kind)},
              {"interval", interval_to_json(l.interval)},
              {"x", l.x}};
    if (l.kind == PatternKind::VI) j["augmented"] = l.augmented;
    if (l.predecessor) j["predecessor"] = *l.predecessor;
    arr.push_back(std::move(j));
  }
  return arr;
}

// ---- experiment config ----------------------------------------------------

inline PriceDist price_dist_from_string(const std::string& s) {
  if (s == "uniform") return PriceDist::uniform;
  if (s == "normal") return PriceDist::normal;
  if (s == "pareto") return PriceDist::pareto;
  throw ParseError("field 'price_dist': unknown distribution '" + s + "'");
}

inline AlgorithmSpec algorithm_from_json(const json& j) {
  if (!j.contains("kind")) throw ParseError("field 'algorithms': entry without 'kind'");
  std::string kind = j["kind"].get<std::string>();
  if (kind == "SUM") return AlgorithmSpec::sum();
  if (kind == "FSUM") return AlgorithmSpec::fsum();
  if (kind == "PFSUM") return AlgorithmSpec::pfsum();
  if (kind == "SUMW" || kind == "SUM_W") {
    if (!j.contains("w")) throw ParseError("field 'algorithms': SUMW needs 'w'");
    return AlgorithmSpec::sum_w(rat_from_json(j["w"], "w"));
  }
  if (kind == "SRL") {
    if (!j.contains("lambda")) throw ParseError("field 'algorithms': SRL needs 'lambda'");
    auto spec = AlgorithmSpec::srl(rat_from_json(j["lambda"], "lambda"));
    if (j.contains("grid_step")) spec.srl_grid_step = rat_from_json(j["grid_step"], "grid_step");
    return spec;
  }
  throw ParseError("field 'algorithms': unknown kind '" + kind + "'");
}

inline ExperimentConfig experiment_config_from_json(const json& j) {
  for (const char* k : {"C", "beta", "T", "algorithms", "perturbations"})
    if (!j.contains(k)) throw ParseError(std::string("config: missing field '") + k + "'");
  BahncardConfig cfg(rat_from_json(j["C"], "C"), rat_from_json(j["beta"], "beta"),
                     rat_from_json(j["T"], "T"));
  ExperimentConfig ec(cfg);
  if (j.contains("profile")) {
    const auto& p = j["profile"];
    if (p.contains("kind")) {
      std::string k = p["kind"].get<std::string>();
      if (k == "commuter")
        ec.profile.profile = Profile::commuter;
      else if (k == "occasional")
        ec.profile.profile = Profile::occasional;
      else
        throw ParseError("field 'profile.kind': unknown profile '" + k + "'");
    }
    if (p.contains("horizon_days")) ec.profile.horizon_days = p["horizon_days"].get<std::int64_t>();
    if (p.contains("gap_mean")) ec.profile.gap_mean = rat_from_json(p["gap_mean"], "gap_mean");
    if (p.contains("price_dist"))
      ec.profile.price_dist = price_dist_from_string(p["price_dist"].get<std::string>());
  }
  for (const auto& a : j["algorithms"]) ec.algorithms.push_back(algorithm_from_json(a));
  for (const auto& p : j["perturbations"]) ec.perturbations.push_back(rat_from_json(p, "perturbations"));
  ec.noise = ec.profile.price_dist;
  if (j.contains("noise")) ec.noise = price_dist_from_string(j["noise"].get<std::string>());
  if (j.contains("runs_per_point")) ec.runs_per_point = j["runs_per_point"].get<int>();
  if (j.contains("base_seed")) ec.base_seed = j["base_seed"].get<std::uint64_t>();
  if (j.contains("removal_first")) ec.removal_first = j["removal_first"].get<bool>();
  if (j.contains("independent_streams"))
    ec.independent_streams = j["independent_streams"].get<bool>();
  ec.validate();
  return ec;
}

}  // namespace bahnlab
