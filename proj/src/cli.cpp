#include "crp/cli.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "crp/errors.hpp"
#include "crp/generators.hpp"
#include "crp/io.hpp"
#include "crp/oracle.hpp"
#include "crp/pricing.hpp"

namespace crp {

using nlohmann::json;

namespace {

struct GlobalFlags {
  std::string tie_break = "high-price";
  std::string format = "table";
  bool witness = false;
  std::uint64_t budget = 0;  // 0 = defaults
  unsigned jobs = 1;
};

TieBreak parse_rule(const std::string& s) {
  if (s == "high-price") return TieBreak::higher_price_first;
  if (s == "low-price") return TieBreak::lower_price_first;
  fail(errc::invalid_params, "tie-break must be high-price or low-price");
}

double approx(const Rational& r) { return std::round(r.to_double() * 1e4) / 1e4; }

json sale_probs_json(const Instance& inst, const std::vector<Rational>& sale_prob) {
  json probs = json::object();
  for (std::size_t i = 0; i < inst.size(); ++i) probs[inst.item(i).name] = sale_prob[i].str();
  probs["(none)"] = sale_prob[inst.size()].str();
  return probs;
}

void render_table(std::ostream& out, const json& j, const std::string& prefix) {
  for (const auto& [key, value] : j.items()) {
    std::string label = prefix.empty() ? key : prefix + "." + key;
    if (value.is_object())
      render_table(out, value, label);
    else if (value.is_array())
      out << label << ": " << value.dump() << "\n";
    else if (value.is_string())
      out << label << ": " << value.get<std::string>() << "\n";
    else
      out << label << ": " << value.dump() << "\n";
  }
}

void emit_report(std::ostream& out, const GlobalFlags& flags, const std::string& command,
                 const std::vector<std::string>& input_paths, json results,
                 std::optional<json> witness, double elapsed_ms) {
  if (flags.format == "json") {
    json report;
    report["command"] = command;
    report["inputs_digest"] = digest_files(input_paths);
    report["results"] = std::move(results);
    if (witness) report["witness"] = std::move(*witness);
    report["elapsed_ms"] = std::round(elapsed_ms * 1e3) / 1e3;
    out << report.dump(2) << "\n";
    return;
  }
  render_table(out, results, "");
  if (witness) out << "witness: " << witness->dump() << "\n";
}

std::vector<std::size_t> parse_index_set(const std::string& text, std::size_t n_items) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    if (part.empty()) continue;
    std::size_t idx = 0;
    try {
      idx = std::stoul(part);
    } catch (const std::exception&) {
      fail(errc::invalid_params, "bad item index '" + part + "'");
    }
    if (idx < 1 || idx > n_items)
      fail(errc::invalid_params, "item index " + std::to_string(idx) + " out of range");
    out.push_back(idx - 1);
  }
  return out;
}

std::vector<std::vector<Rational>> candidates_from_file(const Instance& inst,
                                                        const std::string& path) {
  json j = load_json(path);
  if (j.is_object() && j.contains("candidates")) j = j.at("candidates");
  if (!j.is_array()) fail(errc::parse_error, path + ": expected an array of candidate prices");

  if (!j.empty() && j.front().is_array()) {
    // Explicit per-item sets.
    if (j.size() != inst.size())
      fail(errc::validation_error, "candidate sets for " + std::to_string(j.size()) +
                                       " items, instance has " + std::to_string(inst.size()));
    std::vector<std::vector<Rational>> sets;
    for (const json& arr : j) {
      std::vector<Rational> set;
      for (const json& v : arr) set.push_back(Rational::parse(v.get<std::string>()));
      sets.push_back(std::move(set));
    }
    return sets;
  }

  // Flat list: extras added to the default support-value union.
  std::vector<Rational> extras;
  for (const json& v : j) extras.push_back(Rational::parse(v.get<std::string>()));
  return default_candidates(inst, extras);
}

json pricing_report_results(const Instance& inst, const PricingReport& report,
                            const std::string& rule_name) {
  json results;
  results["prices"] = pricing_to_json(report.pricing)["prices"];
  results["robust_revenue"] = report.robust_revenue.str();
  results["robust_revenue_approx"] = approx(report.robust_revenue);
  results["comonotonic_revenue"] = report.comonotonic_revenue.str();
  results["comonotonic_revenue_approx"] = approx(report.comonotonic_revenue);
  results["myerson_sum_bound"] = report.myerson_sum_bound.str();
  results["myerson_sum_bound_approx"] = approx(report.myerson_sum_bound);
  results["sale_prob"] = sale_probs_json(inst, report.response.sale_prob);
  results["tie_break"] = rule_name;
  return results;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  GlobalFlags flags;

  CLI::App app{"Correlation-robust pricing toolkit for a unit-demand buyer"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--tie-break", flags.tie_break, "Tie-break rule: high-price (default) or low-price")
      ->check(CLI::IsMember({"high-price", "low-price"}));
  app.add_option("--format", flags.format, "Output format: table (default) or json")
      ->check(CLI::IsMember({"table", "json"}));
  app.add_flag("--witness", flags.witness, "Include the witness coupling in the report");
  app.add_option("--budget", flags.budget, "Enumeration budget (oracle couplings / search pricings)");
  app.add_option("--jobs", flags.jobs, "Worker threads for search");

  std::string instance_path, pricing_path, coupling_path, graph_path, candidates_path, set_arg;
  std::size_t gen_n = 0, gen_grid = 64, gen_m = 0;
  std::string gen_a = "0", gen_b = "1", gen_lambda = "1", gen_qcap = "99/100";
  std::size_t max_distinct = 0;

  CLI::App* cmd_best = app.add_subcommand("best-response", "Adversary's revenue-minimizing coupling");
  cmd_best->add_option("instance", instance_path)->required();
  cmd_best->add_option("pricing", pricing_path)->required();

  CLI::App* cmd_revenue = app.add_subcommand("revenue", "Evaluate a coupling's expected revenue");
  cmd_revenue->add_option("instance", instance_path)->required();
  cmd_revenue->add_option("pricing", pricing_path)->required();
  cmd_revenue->add_option("coupling", coupling_path)->required();

  CLI::App* cmd_report = app.add_subcommand("report", "Full robust-revenue report for a pricing");
  cmd_report->add_option("instance", instance_path)->required();
  cmd_report->add_option("pricing", pricing_path)->required();

  CLI::App* cmd_price = app.add_subcommand("price", "Pricing rules");
  cmd_price->require_subcommand(1);
  CLI::App* cmd_price_mhr = cmd_price->add_subcommand("mhr", "Max-median single price");
  cmd_price_mhr->add_option("instance", instance_path)->required();
  CLI::App* cmd_price_half = cmd_price->add_subcommand("half-threshold", "Half-truncation prices");
  cmd_price_half->add_option("instance", instance_path)->required();
  cmd_price_half->add_option("--set", set_arg, "Comma-separated 1-based item indices")->required();

  CLI::App* cmd_search = app.add_subcommand("search", "Best-on-grid max-min pricing search");
  cmd_search->add_option("instance", instance_path)->required();
  cmd_search->add_option("--max-distinct", max_distinct, "Cap on distinct finite prices");
  cmd_search->add_option("--candidates", candidates_path, "Candidate price file");

  CLI::App* cmd_gen = app.add_subcommand("gen", "Instance generators");
  cmd_gen->require_subcommand(1);
  CLI::App* cmd_gen_mis = cmd_gen->add_subcommand("mis", "Independent-set reduction instance");
  cmd_gen_mis->add_option("graph", graph_path)->required();
  CLI::App* cmd_gen_eqrev = cmd_gen->add_subcommand("eqrev", "Truncated equal-revenue family");
  cmd_gen_eqrev->add_option("--n", gen_n)->required();
  cmd_gen_eqrev->add_option("--grid", gen_grid);
  CLI::App* cmd_gen_uniform = cmd_gen->add_subcommand("uniform", "Discretized uniform marginal");
  cmd_gen_uniform->add_option("--a", gen_a);
  cmd_gen_uniform->add_option("--b", gen_b);
  cmd_gen_uniform->add_option("--m", gen_m)->required();
  CLI::App* cmd_gen_exp = cmd_gen->add_subcommand("exp", "Discretized exponential marginal");
  cmd_gen_exp->add_option("--lambda", gen_lambda);
  cmd_gen_exp->add_option("--m", gen_m)->required();
  cmd_gen_exp->add_option("--q-cap", gen_qcap);

  CLI::App* cmd_oracle = app.add_subcommand("oracle", "Brute-force ground truth");
  cmd_oracle->require_subcommand(1);
  CLI::App* cmd_oracle_min = cmd_oracle->add_subcommand("min", "Minimum revenue over all couplings");
  cmd_oracle_min->add_option("instance", instance_path)->required();
  cmd_oracle_min->add_option("pricing", pricing_path)->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 1;
  }

  const TieBreak rule = parse_rule(flags.tie_break);
  const std::string rule_name = flags.tie_break;
  std::string command;
  for (const std::string& a : args) command += (command.empty() ? "" : " ") + a;

  auto start = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  };

  if (cmd_best->parsed()) {
    Instance inst = load_instance(instance_path);
    Pricing p = load_pricing(pricing_path, inst.size());
    BestResponse br = best_response(inst, p, rule);
    json results;
    results["revenue"] = br.revenue.str();
    results["revenue_approx"] = approx(br.revenue);
    results["sale_prob"] = sale_probs_json(inst, br.sale_prob);
    results["chains"] = br.coupling.chains.size();
    results["tie_break"] = rule_name;
    std::optional<json> witness;
    if (flags.witness) witness = coupling_to_json(br.coupling);
    emit_report(out, flags, command, {instance_path, pricing_path}, std::move(results),
                std::move(witness), elapsed());
    return 0;
  }

  if (cmd_revenue->parsed()) {
    Instance inst = load_instance(instance_path);
    Pricing p = load_pricing(pricing_path, inst.size());
    Coupling c = load_coupling(coupling_path, inst.size());
    BestResponse br = revenue_of_coupling(inst, p, c, rule);
    json results;
    results["revenue"] = br.revenue.str();
    results["revenue_approx"] = approx(br.revenue);
    results["sale_prob"] = sale_probs_json(inst, br.sale_prob);
    results["tie_break"] = rule_name;
    emit_report(out, flags, command, {instance_path, pricing_path, coupling_path},
                std::move(results), std::nullopt, elapsed());
    return 0;
  }

  if (cmd_report->parsed()) {
    Instance inst = load_instance(instance_path);
    Pricing p = load_pricing(pricing_path, inst.size());
    PricingReport report = robust_revenue(inst, p, rule);
    json results = pricing_report_results(inst, report, rule_name);
    std::optional<json> witness;
    if (flags.witness) witness = coupling_to_json(report.response.coupling);
    emit_report(out, flags, command, {instance_path, pricing_path}, std::move(results),
                std::move(witness), elapsed());
    return 0;
  }

  if (cmd_price_mhr->parsed()) {
    Instance inst = load_instance(instance_path);
    Pricing p = max_median_single_price(inst);
    json results;
    results["prices"] = pricing_to_json(p)["prices"];
    for (std::size_t i = 0; i < inst.size(); ++i)
      if (p.offered(i)) {
        results["item"] = inst.item(i).name;
        results["price"] = p.price(i).str();
      }
    emit_report(out, flags, command, {instance_path}, std::move(results), std::nullopt, elapsed());
    return 0;
  }

  if (cmd_price_half->parsed()) {
    Instance inst = load_instance(instance_path);
    std::vector<Rational> trunc;
    trunc.reserve(inst.size());
    for (const Item& item : inst.items()) trunc.push_back(item.marginal.max_value());
    Pricing p = half_threshold_pricing(trunc, parse_index_set(set_arg, inst.size()));
    json results;
    results["prices"] = pricing_to_json(p)["prices"];
    json tjson = json::array();
    for (const Rational& t : trunc) tjson.push_back(t.str());
    results["trunc_points"] = std::move(tjson);
    emit_report(out, flags, command, {instance_path}, std::move(results), std::nullopt, elapsed());
    return 0;
  }

  if (cmd_search->parsed()) {
    Instance inst = load_instance(instance_path);
    auto candidates = candidates_path.empty() ? default_candidates(inst)
                                              : candidates_from_file(inst, candidates_path);
    SearchOptions options;
    if (max_distinct > 0) options.max_distinct = max_distinct;
    if (flags.budget > 0) options.budget = flags.budget;
    options.jobs = flags.jobs;
    PricingReport report = search_maxmin(inst, candidates, rule, options);
    json results = pricing_report_results(inst, report, rule_name);
    std::optional<json> witness;
    if (flags.witness) witness = coupling_to_json(report.response.coupling);
    std::vector<std::string> inputs{instance_path};
    if (!candidates_path.empty()) inputs.push_back(candidates_path);
    emit_report(out, flags, command, inputs, std::move(results), std::move(witness), elapsed());
    return 0;
  }

  if (cmd_gen_mis->parsed() || cmd_gen_eqrev->parsed() || cmd_gen_uniform->parsed() ||
      cmd_gen_exp->parsed()) {
    json instance_json;
    if (cmd_gen_mis->parsed()) {
      std::ifstream in(graph_path);
      if (!in) fail(errc::file_not_found, graph_path);
      instance_json = instance_to_json(gen_mis(parse_graph(in)));
    } else if (cmd_gen_eqrev->parsed()) {
      instance_json = instance_to_json(gen_truncated_eqrev(gen_n, gen_grid).instance);
    } else if (cmd_gen_uniform->parsed()) {
      Marginal m = discretize_uniform(Rational::parse(gen_a), Rational::parse(gen_b), gen_m);
      instance_json = instance_to_json(Instance({Item{"uniform", std::move(m)}}));
    } else {
      Marginal m = discretize_exponential(Rational::parse(gen_lambda), gen_m, Rational::parse(gen_qcap));
      instance_json = instance_to_json(Instance({Item{"exp", std::move(m)}}));
    }
    out << instance_json.dump(2) << "\n";
    return 0;
  }

  if (cmd_oracle_min->parsed()) {
    Instance inst = load_instance(instance_path);
    Pricing p = load_pricing(pricing_path, inst.size());
    OracleBudget budget;
    if (flags.budget > 0) budget.max_couplings = flags.budget;
    OracleScan scan = oracle_scan(inst, p, rule, budget);
    json results;
    results["min_revenue"] = scan.min_revenue.str();
    results["min_revenue_approx"] = approx(scan.min_revenue);
    results["couplings"] = scan.couplings;
    results["tie_break"] = rule_name;
    std::optional<json> witness;
    if (flags.witness) witness = coupling_to_json(scan.witness);
    emit_report(out, flags, command, {instance_path, pricing_path}, std::move(results),
                std::move(witness), elapsed());
    return 0;
  }

  err << "no subcommand selected\n";
  return 1;
}

}  // namespace

int execute(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    return run(args, out, err);
  } catch (const error& e) {
    err << e.what() << "\n";
    return 2;
  }
}

}  // namespace crp
