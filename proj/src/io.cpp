#include "penlq/io.hpp"

#include <fstream>
#include <sstream>

#include "penlq/error.hpp"

namespace penlq::io {

namespace {

[[noreturn]] void malformed(const std::string& what) { throw InvalidInstance(what); }

const json& field(const json& doc, const char* name) {
  if (!doc.is_object() || !doc.contains(name)) {
    malformed(std::string("missing field '") + name + "'");
  }
  return doc.at(name);
}

double number(const json& doc, const char* name) {
  const json& v = field(doc, name);
  if (!v.is_number()) malformed(std::string("field '") + name + "' must be a number");
  return v.get<double>();
}

json check_json(const CheckResult& c) {
  return {{"pass", c.pass}, {"measure", c.measure}, {"witness", c.witness}, {"detail", c.detail}};
}

}  // namespace

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) malformed("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    malformed(path.string() + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const json& doc) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << doc.dump(2) << '\n';
}

json to_json(const PenaltySpec& spec) {
  json params = json::object();
  for (const auto& [k, v] : spec.params()) params[k] = v;
  return {{"family", std::string(family_name(spec.family()))}, {"params", params}};
}

PenaltySpec penalty_from_json(const json& doc) {
  const json& fam = field(doc, "family");
  if (!fam.is_string()) malformed("penalty 'family' must be a string");
  ParamMap params;
  if (doc.contains("params")) {
    const json& p = doc.at("params");
    if (!p.is_object()) malformed("penalty 'params' must be an object");
    for (const auto& [k, v] : p.items()) {
      if (!v.is_number()) malformed("penalty parameter '" + k + "' must be a number");
      params[k] = v.get<double>();
    }
  }
  return PenaltySpec::make_named(fam.get<std::string>(), params);
}

json to_json(const ThreePartitionInstance& tp) { return {{"m", tp.m}, {"b", tp.b}}; }

ThreePartitionInstance tp_from_json(const json& doc) {
  const json& m = field(doc, "m");
  const json& b = field(doc, "b");
  if (!m.is_number_integer()) malformed("tp 'm' must be an integer");
  if (!b.is_array()) malformed("tp 'b' must be an array");
  std::vector<std::int64_t> values;
  for (const json& v : b) {
    if (!v.is_number_integer()) malformed("tp 'b' entries must be integers");
    values.push_back(v.get<std::int64_t>());
  }
  return ThreePartitionInstance::make(m.get<int>(), std::move(values));
}

json partition_to_json(const Partition& partition) {
  json out = json::array();
  for (const auto& subset : partition.subsets) {
    json s = json::array();
    for (std::size_t i : subset) s.push_back(i + 1);
    out.push_back(std::move(s));
  }
  return out;
}

Partition partition_from_json(const ThreePartitionInstance& tp, const json& doc) {
  const json& arr = doc.is_object() ? field(doc, "partition") : doc;
  if (!arr.is_array()) malformed("partition must be an array of subsets");
  std::vector<std::vector<std::size_t>> subsets;
  for (const json& s : arr) {
    if (!s.is_array()) malformed("partition subsets must be arrays");
    std::vector<std::size_t> subset;
    for (const json& v : s) {
      if (!v.is_number_integer() || v.get<std::int64_t>() < 1) {
        malformed("partition entries must be 1-based item indices");
      }
      subset.push_back(v.get<std::size_t>() - 1);
    }
    subsets.push_back(std::move(subset));
  }
  return make_partition(tp, std::move(subsets));
}

json to_json(const ConditionReport& r) {
  return {{"grid_n", r.grid_n},
          {"tau", r.tau},
          {"tau0", r.tau0},
          {"monotone", check_json(r.monotone)},
          {"concave_on_0_tau", check_json(r.concave_on_0_tau)},
          {"not_linear", check_json(r.not_linear)},
          {"smooth_near_tau", check_json(r.smooth_near_tau)},
          {"overall", r.overall}};
}

json to_json(const Lemma1FuzzReport& r) {
  return {{"trials", r.trials},
          {"seed", r.seed},
          {"violations", r.violations},
          {"first_violation", r.first_violation}};
}

json to_json(const Lemma2FuzzReport& r) {
  return {{"trials", r.trials},
          {"seed", r.seed},
          {"hypothesis_fails", r.hypothesis_fails},
          {"concentrated", r.concentrated},
          {"counterexamples", r.counterexamples},
          {"first_counterexample", r.first_counterexample}};
}

json to_json(const GSetup& s) {
  return {{"theta", s.params.theta},
          {"mu", s.params.mu},
          {"tau_hat", s.params.tau_hat.value()},
          {"t_star", s.analysis.t_star},
          {"h", s.analysis.h},
          {"delta_bar", s.analysis.delta_bar},
          {"theta_lower", s.analysis.theta_lower},
          {"mu_lower", s.analysis.mu_lower},
          {"q", s.params.q},
          {"lambda", s.params.lambda},
          {"tau_hat_rational", s.params.tau_hat.str()},
          {"root_theta", s.params.root_theta.str()},
          {"root_mu", s.params.root_mu.str()}};
}

json instance_to_json(const ReductionInstance& red, int grid_exp) {
  const ProblemInstance& pb = red.problem;
  json meta = {{"theta", red.gparams.theta},
               {"mu", red.gparams.mu},
               {"tau_hat", red.gparams.tau_hat.value()},
               {"t_star", red.ganalysis.t_star},
               {"h", red.ganalysis.h},
               {"delta", red.delta},
               {"epsilon", red.epsilon},
               {"bound", optimal_bound(red)},
               {"delta_bar", red.ganalysis.delta_bar},
               {"theta_lower", red.ganalysis.theta_lower},
               {"mu_lower", red.ganalysis.mu_lower},
               {"tau", red.analysis.tau},
               {"tau0", red.analysis.tau0},
               {"C1", red.analysis.C1},
               {"K", red.analysis.K},
               {"tau_hat_rational", red.gparams.tau_hat.str()},
               {"root_theta", red.gparams.root_theta.str()},
               {"root_mu", red.gparams.root_mu.str()},
               {"column_order", "item-major: column = i*m + j (0-based)"}};
  return {{"rows", pb.A.rows()},
          {"cols", pb.A.cols()},
          {"A", pb.A.data()},
          {"target", pb.target},
          {"lambda", pb.lambda},
          {"q", pb.q},
          {"tp", to_json(red.tp)},
          {"penalty", to_json(pb.penalty)},
          {"grid_exp", grid_exp},
          {"meta", std::move(meta)}};
}

ReductionInstance instance_from_json(const json& doc) {
  const int grid_exp = doc.contains("grid_exp") ? field(doc, "grid_exp").get<int>() : 20;
  ReductionInstance red = build(tp_from_json(field(doc, "tp")), penalty_from_json(field(doc, "penalty")),
                                number(doc, "q"), number(doc, "lambda"), grid_exp);
  if (doc.contains("A")) {
    const auto A = field(doc, "A").get<std::vector<double>>();
    const auto target = field(doc, "target").get<std::vector<double>>();
    if (A != red.problem.A.data() || target != red.problem.target ||
        number(doc, "rows") != static_cast<double>(red.problem.A.rows()) ||
        number(doc, "cols") != static_cast<double>(red.problem.A.cols())) {
      malformed("instance file: stored A/target do not match the reduction of its tp and penalty");
    }
  }
  return red;
}

json solution_to_json(const SolveResult& r) {
  return {{"x", r.x.entries},
          {"value", r.value},
          {"gap", r.gap},
          {"assignments_explored", r.assignments_explored},
          {"equitable_assignments", r.equitable_assignments},
          {"seed", r.seed}};
}

SolutionMatrix solution_from_json(const ReductionInstance& red, const json& doc) {
  const json& x = field(doc, "x");
  if (!x.is_array()) malformed("solution 'x' must be an array");
  SolutionMatrix out(red.n(), red.m());
  if (x.size() != out.entries.size()) {
    malformed("solution 'x' has " + std::to_string(x.size()) + " entries, instance needs " +
              std::to_string(out.entries.size()));
  }
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (!x[k].is_number()) malformed("solution 'x' entries must be numbers");
    out.entries[k] = x[k].get<double>();
  }
  return out;
}

json to_json(const Decision& d) {
  json out = {{"verdict", d.verdict == Verdict::Yes ? "yes" : "unknown"},
              {"value", d.value},
              {"threshold", d.threshold}};
  if (d.partition) {
    out["partition"] = partition_to_json(*d.partition);
    out["sums"] = d.partition->sums;
    out["max_sum_gap"] = d.max_sum_gap;
  } else {
    out["partition"] = nullptr;
    out["sums"] = nullptr;
  }
  return out;
}

}  // namespace penlq::io
