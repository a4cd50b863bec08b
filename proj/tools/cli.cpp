#include "cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include "scg/constructions.hpp"
#include "scg/error.hpp"
#include "scg/io.hpp"
#include "scg/lp_oracle.hpp"
#include "scg/montecarlo.hpp"
#include "scg/rules.hpp"

namespace scg::cli {

namespace {

struct UsageError : Error {
  using Error::Error;
};

std::string after(const std::string& spec, const std::string& prefix) { return spec.substr(prefix.size()); }

bool starts_with(const std::string& s, const std::string& prefix) { return s.rfind(prefix, 0) == 0; }

template <typename T>
UtilityRule<T> custom_rule(const std::string& spec, std::size_t n_max) {
  auto rule = rule_from_json<T>(load_json(after(spec, "custom:@")));
  if (rule.n_max() < n_max) {
    throw UsageError("custom rule defines " + std::to_string(rule.n_max()) + " values, " + std::to_string(n_max) +
                     " needed");
  }
  return rule;
}

void check_spec(const std::string& spec) {
  if (spec == "mc" || spec == "poa-opt" || starts_with(spec, "pareto:X=") || starts_with(spec, "pareto:C=") ||
      starts_with(spec, "custom:@")) {
    return;
  }
  throw UsageError("unknown rule '" + spec + "' (expected mc, poa-opt, pareto:X=<r>, pareto:C=<r>, custom:@file)");
}

Json rational_json(const Rational& x) { return to_string(x); }

std::string show(const Rational& x) {
  std::ostringstream s;
  s << to_string(x);
  if (x.get_den() != 1) s << " (" << to_string(to_double(x)) << ")";
  return s.str();
}

void print_table(std::ostream& out, const Json& doc) {
  std::size_t width = 0;
  for (auto it = doc.begin(); it != doc.end(); ++it) width = std::max(width, it.key().size());
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    out << std::left << std::setw(static_cast<int>(width) + 2) << it.key();
    if (it.value().is_string()) {
      out << it.value().get<std::string>();
    } else {
      out << it.value().dump();
    }
    out << '\n';
  }
}

void emit(std::ostream& out, const Json& doc, bool json) {
  if (json) {
    out << doc.dump(2) << '\n';
  } else {
    print_table(out, doc);
  }
}

struct Options {
  std::string rule = "mc";
  std::size_t n = 2;
  std::size_t n_max = 0;
  std::size_t k = 1;
  bool json = false;
  std::string out;
  std::uint64_t seed = 0;
  bool seed_given = false;
  int threads = 0;
  std::string policy = "lowest-action-index";
  std::string game;
  std::string family;
  std::string config;
  std::string dump;
  std::string end_states;
  std::string summary;
  std::size_t grid = 0;
  std::vector<std::string> c_values;
};

int cmd_rule(const Options& o, std::ostream& out) {
  const std::size_t n_max = o.n_max ? o.n_max : o.n;
  auto rule = exact_rule(o.rule, n_max);
  Json doc = rule_to_json(rule);
  if (!o.out.empty()) write_text(o.out, doc.dump(2) + "\n");
  if (o.json) {
    out << doc.dump(2) << '\n';
  } else {
    out << "rule " << rule.name() << '\n';
    for (std::size_t j = 1; j <= rule.n_max(); ++j) out << "f(" << j << ") = " << show(rule(j)) << '\n';
  }
  return kExitOk;
}

int cmd_pob(const Options& o, std::ostream& out) {
  auto rule = exact_rule(o.rule, o.n);
  Json doc;
  doc["rule"] = o.rule;
  doc["n"] = o.n;
  doc["pob_one_round"] = rational_json(pob_one_round(rule, o.n));
  doc["pob_one_round_float"] = to_string(to_double(pob_one_round(rule, o.n)));
  emit(out, doc, o.json);
  return kExitOk;
}

int cmd_poa(const Options& o, std::ostream& out) {
  auto rule = exact_rule(o.rule, o.n);
  Json doc;
  doc["rule"] = o.rule;
  doc["n"] = o.n;
  Rational poa = poa_value(rule, o.n);
  doc["poa"] = rational_json(poa);
  doc["poa_float"] = to_string(to_double(poa));
  auto unit = normalized(rule);
  if (unit.is_nonincreasing()) doc["poa_nonincreasing_form"] = rational_json(poa_value_nonincreasing(unit, o.n));
  emit(out, doc, o.json);
  return kExitOk;
}

int cmd_frontier(const Options& o, std::ostream& out) {
  std::vector<double> grid;
  if (o.grid > 0) grid = frontier_grid(o.grid);
  for (const auto& c : o.c_values) grid.push_back(to_double(parse_rational(c)));
  if (grid.empty()) throw UsageError("frontier needs --grid N or --C value");
  std::vector<FrontierPoint> points;
  try {
    points = frontier_sweep(grid);
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  std::ostringstream csv;
  csv << "C,pob_opt\n";
  for (const auto& p : points) csv << to_string(p.poa) << ',' << to_string(p.pob) << '\n';
  if (!o.out.empty()) {
    write_text(o.out, csv.str());
  } else {
    out << csv.str();
  }
  return kExitOk;
}

int cmd_worstcase(const Options& o, std::ostream& out) {
  auto rule = exact_rule(o.rule, o.n);
  auto report = verify_worst_case(rule, o.n);
  if (!o.out.empty()) write_text(o.out, game_to_json(report.game).dump(2) + "\n");
  Json doc;
  doc["rule"] = o.rule;
  doc["n"] = o.n;
  doc["predicted_pob"] = rational_json(report.predicted);
  doc["achieved_pob"] = rational_json(report.achieved);
  doc["matched"] = report.matched;
  emit(out, doc, o.json);
  return report.matched ? kExitOk : kExitCheckFailed;
}

int cmd_gf(const Options& o, std::ostream& out) {
  auto rule = normalized(exact_rule(o.rule, std::max<std::size_t>(o.n, 2)));
  auto report = verify_gf(rule, o.n, o.k);
  if (!o.out.empty()) write_text(o.out, game_to_json(report.game).dump(2) + "\n");
  Json doc;
  doc["rule"] = o.rule;
  doc["n"] = o.n;
  doc["k"] = o.k;
  doc["predicted_pob"] = rational_json(report.predicted);
  doc["achieved_pob"] = rational_json(report.achieved);
  doc["matched"] = report.matched;
  emit(out, doc, o.json);
  return report.matched ? kExitOk : kExitCheckFailed;
}

int cmd_lp_verify(const Options& o, std::ostream& out) {
  auto rule = exact_rule(o.rule, o.n);
  auto lp = build_dual_lp(rule, o.n);
  if (!o.dump.empty()) {
    std::ostringstream text;
    write_lp(lp, text);
    write_text(o.dump, text.str());
  }
  auto solution = solve_lp(lp);
  Rational lp_value = 1 / solution.mu;
  Rational formula = pob_one_round(rule, o.n);
  Json doc;
  doc["rule"] = o.rule;
  doc["n"] = o.n;
  doc["constraints"] = lp.rows.size();
  doc["mu"] = rational_json(solution.mu);
  Json lambda = Json::array();
  for (const auto& l : solution.lambda) lambda.push_back(rational_json(l));
  doc["lambda"] = std::move(lambda);
  doc["lp_pob"] = rational_json(lp_value);
  doc["pob_formula"] = rational_json(formula);
  doc["equal"] = lp_value == formula;
  emit(out, doc, o.json);
  return lp_value == formula ? kExitOk : kExitCheckFailed;
}

int cmd_search(const Options& o, std::ostream& out) {
  if (o.family.empty()) throw UsageError("search needs --family file.json");
  auto family = family_from_json<Rational>(load_json(o.family));
  auto rule = exact_rule(o.rule, family.n);
  if (family.value_grid.empty()) family.value_grid = default_value_grid(rule);
  auto result = search_games(family, rule, o.k);
  Json doc;
  doc["rule"] = o.rule;
  doc["k"] = o.k;
  doc["family"] = family_to_json(family);
  doc["candidates"] = result.candidates;
  doc["evaluated"] = result.evaluated;
  bool ok = true;
  if (result.min_pob) {
    doc["min_pob"] = rational_json(*result.min_pob);
    if (o.k == 1 && family.n >= 2) {
      Rational bound = pob_one_round(rule, family.n);
      doc["closed_form_bound"] = rational_json(bound);
      ok = *result.min_pob >= bound;
      doc["respects_bound"] = ok;
    }
    if (!o.out.empty()) write_text(o.out, game_to_json(*result.witness).dump(2) + "\n");
  } else {
    doc["min_pob"] = nullptr;
  }
  emit(out, doc, o.json);
  return ok ? kExitOk : kExitCheckFailed;
}

int cmd_dynamics(const Options& o, std::ostream& out) {
  if (o.game.empty()) throw UsageError("dynamics needs --game file.json");
  auto game = game_from_json<Rational>(load_json(o.game));
  auto rule = exact_rule(o.rule, game.num_agents());
  const auto policy = parse_tie_policy(o.policy);
  Json doc;
  doc["rule"] = o.rule;
  doc["k"] = o.k;
  doc["policy"] = o.policy;
  if (policy != TiePolicy::EnumerateAll) {
    auto trajectory = run_round(game, rule, o.k, policy, o.seed);
    std::ostringstream csv;
    write_trajectory_csv(trajectory, csv);
    if (!o.out.empty()) write_text(o.out, csv.str());
    doc["end"] = profile_to_json(trajectory.end);
    doc["end_welfare"] = rational_json(welfare(game, trajectory.end));
    doc["is_nash"] = is_nash(game, rule, trajectory.end);
  }
  if (policy == TiePolicy::EnumerateAll || !o.end_states.empty()) {
    auto ends = enumerate_end_states(game, rule, o.k);
    if (!o.end_states.empty()) write_text(o.end_states, end_states_to_json(game, ends).dump(2) + "\n");
    doc["end_state_count"] = ends.size();
    auto report = empirical_pob(game, rule, o.k);
    doc["pob_empirical"] = rational_json(report.pob_empirical);
    doc["witness_end"] = profile_to_json(report.witness_end);
    doc["witness_opt"] = profile_to_json(report.witness_opt);
  }
  emit(out, doc, o.json);
  return kExitOk;
}

int cmd_montecarlo(const Options& o, std::ostream& out) {
  if (o.config.empty()) throw UsageError("montecarlo needs --config path");
  if (!std::filesystem::exists(o.config)) throw UsageError("config file not found: '" + o.config + "'");
  auto cfg = config_from_json(load_json(o.config));
  if (o.seed_given) cfg.seed = o.seed;
  auto series = run_experiment(cfg);
  std::ostringstream csv;
  write_series_csv(series, csv);
  if (!o.out.empty()) {
    write_text(o.out, csv.str());
  } else if (!o.json) {
    out << csv.str();
  }
  auto summary = summarize(series, cfg);
  Json doc;
  doc["first_round_end_mean"] = summary.first_round_end_mean;
  doc["final_mean"] = summary.final_mean;
  doc["excluded_total"] = summary.excluded_total;
  if (!o.summary.empty()) write_text(o.summary, doc.dump(2) + "\n");
  if (o.json) {
    out << doc.dump(2) << '\n';
  } else if (!o.out.empty()) {
    print_table(out, doc);
  }
  return kExitOk;
}

int cmd_verify(const Options& o, std::ostream& out) {
  auto rule = exact_rule(o.rule, o.n);
  Rational formula = pob_one_round(rule, o.n);
  auto unit = normalized(rule);
  auto construction = verify_worst_case(rule, o.n);
  auto gf = verify_gf(unit, o.n, o.k);

  Json doc;
  doc["rule"] = o.rule;
  doc["n"] = o.n;
  doc["k"] = o.k;
  doc["pob_formula"] = rational_json(formula);
  std::optional<Rational> lp_value;
  if (o.n <= kMaxDualAgents) {
    lp_value = lp_pob(rule, o.n);
    doc["lp_pob"] = rational_json(*lp_value);
  } else {
    doc["lp_pob"] = nullptr;
    doc["lp_note"] = "dual program skipped for n > " + std::to_string(kMaxDualAgents);
  }
  doc["construction_pob"] = rational_json(construction.achieved);
  doc["gf_pob"] = rational_json(gf.achieved);
  doc["poa_formula"] = rational_json(poa_value(rule, o.n));

  Json checks;
  checks["lp_matches_formula"] = !lp_value || *lp_value == formula;
  checks["construction_matches_formula"] = construction.matched;
  checks["gf_equals_half"] = gf.matched;
  checks["formula_at_most_half"] = formula <= Rational(1, 2);
  bool all = true;
  for (const auto& c : checks) all = all && c.get<bool>();
  doc["checks"] = checks;
  doc["all_consistent"] = all;
  emit(out, doc, o.json);
  return all ? kExitOk : kExitCheckFailed;
}

}  // namespace

UtilityRule<Rational> exact_rule(const std::string& spec, std::size_t n_max) {
  check_spec(spec);
  if (spec == "mc") return mc_rule<Rational>(n_max);
  if (spec == "poa-opt") return to_rational(poa_optimal_rule(n_max));
  if (starts_with(spec, "pareto:X=")) return pareto_rule_exact(parse_rational(after(spec, "pareto:X=")), n_max);
  if (starts_with(spec, "pareto:C=")) {
    Rational c = parse_rational(after(spec, "pareto:C="));
    if (c <= 0 || c > 1) throw UsageError("pareto:C must lie in (0, 1]");
    return pareto_rule_exact((1 - c) / c, n_max);
  }
  return custom_rule<Rational>(spec, n_max);
}

UtilityRule<double> float_rule(const std::string& spec, std::size_t n_max) {
  check_spec(spec);
  if (spec == "mc") return mc_rule<double>(n_max);
  if (spec == "poa-opt") return poa_optimal_rule(n_max);
  if (starts_with(spec, "pareto:X=")) {
    return pareto_rule(ParetoParameter::from_x(parse_rational(after(spec, "pareto:X="))), n_max);
  }
  if (starts_with(spec, "pareto:C=")) {
    return pareto_rule(ParetoParameter::from_c(parse_rational(after(spec, "pareto:C="))), n_max);
  }
  return custom_rule<double>(spec, n_max);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Set covering games: best-response dynamics and efficiency bounds"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--threads", o.threads, "Worker threads for parallel kernels (0 = runtime default)")
      ->check(CLI::NonNegativeNumber);

  auto add_json = [&](CLI::App* sub) { sub->add_flag("--json", o.json, "Print machine-readable JSON"); };
  auto add_rule = [&](CLI::App* sub) {
    sub->add_option("--rule", o.rule, "mc | poa-opt | pareto:X=<r> | pareto:C=<r> | custom:@file.json");
  };
  auto add_n = [&](CLI::App* sub) { sub->add_option("--n", o.n, "Number of agents")->check(CLI::Range(1, 64)); };
  auto add_k = [&](CLI::App* sub) { sub->add_option("--k", o.k, "Best-response rounds")->check(CLI::Range(1, 1000)); };

  auto* rule_cmd = app.add_subcommand("rule", "Print a utility rule");
  add_rule(rule_cmd);
  add_n(rule_cmd);
  rule_cmd->add_option("--n-max", o.n_max, "Number of values (defaults to --n)");
  rule_cmd->add_option("--out", o.out, "Write the rule JSON here");
  add_json(rule_cmd);

  auto* pob_cmd = app.add_subcommand("pob", "Closed-form 1-round price of best response");
  add_rule(pob_cmd);
  add_n(pob_cmd);
  add_json(pob_cmd);

  auto* poa_cmd = app.add_subcommand("poa", "Closed-form price of anarchy");
  add_rule(poa_cmd);
  add_n(poa_cmd);
  add_json(poa_cmd);

  auto* frontier_cmd = app.add_subcommand("frontier", "Optimal PoB for a PoA target (CSV C,pob_opt)");
  frontier_cmd->add_option("--grid", o.grid, "Evenly spaced points on [1/2, 1-1/e]");
  frontier_cmd->add_option("--C", o.c_values, "PoA target(s)");
  frontier_cmd->add_option("--out", o.out, "CSV output path (stdout otherwise)");

  auto* worst_cmd = app.add_subcommand("worstcase", "Build and check the 1-round worst-case game");
  add_rule(worst_cmd);
  add_n(worst_cmd);
  worst_cmd->add_option("--out", o.out, "Write the game JSON here");
  add_json(worst_cmd);

  auto* gf_cmd = app.add_subcommand("gf", "Build and check the two-agent PoB = 1/2 game");
  add_rule(gf_cmd);
  add_n(gf_cmd);
  add_k(gf_cmd);
  gf_cmd->add_option("--out", o.out, "Write the game JSON here");
  add_json(gf_cmd);

  auto* lp_cmd = app.add_subcommand("lp-verify", "Solve the dual program exactly and compare with the closed form");
  add_rule(lp_cmd);
  add_n(lp_cmd);
  lp_cmd->add_option("--dump", o.dump, "Write the LP listing here");
  add_json(lp_cmd);

  auto* search_cmd = app.add_subcommand("search", "Exhaustive minimum PoB over a small game family");
  search_cmd->add_option("--family", o.family, "Family descriptor JSON")->required();
  add_rule(search_cmd);
  add_k(search_cmd);
  search_cmd->add_option("--out", o.out, "Write the witness game JSON here");
  add_json(search_cmd);

  auto* dyn_cmd = app.add_subcommand("dynamics", "Run or enumerate k-round best-response dynamics on a game file");
  dyn_cmd->add_option("--game", o.game, "Game JSON")->required();
  add_rule(dyn_cmd);
  add_k(dyn_cmd);
  dyn_cmd->add_option("--policy", o.policy, "enumerate-all | lowest-action-index | prefer-stay | seeded-random");
  dyn_cmd->add_option("--seed", o.seed, "Seed for seeded-random ties");
  dyn_cmd->add_option("--out", o.out, "Trajectory CSV path");
  dyn_cmd->add_option("--end-states", o.end_states, "Write E(k) JSON here");
  add_json(dyn_cmd);

  auto* mc_cmd = app.add_subcommand("montecarlo", "Random-game comparison of the MC and PoA-optimal rules");
  mc_cmd->add_option("--config", o.config, "Experiment config JSON")->required();
  mc_cmd->add_option("--out", o.out, "Ratio series CSV path");
  auto* seed_opt = mc_cmd->add_option("--seed", o.seed, "Override the config seed");
  mc_cmd->add_option("--summary", o.summary, "Write the JSON summary here");
  add_json(mc_cmd);

  auto* verify_cmd = app.add_subcommand("verify", "Cross-check closed form, LP oracle and constructions");
  add_rule(verify_cmd);
  add_n(verify_cmd);
  add_k(verify_cmd);
  add_json(verify_cmd);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  o.seed_given = seed_opt->count() > 0;

  try {
    set_worker_threads(o.threads);
    if (*rule_cmd) return cmd_rule(o, out);
    if (*pob_cmd) return cmd_pob(o, out);
    if (*poa_cmd) return cmd_poa(o, out);
    if (*frontier_cmd) return cmd_frontier(o, out);
    if (*worst_cmd) return cmd_worstcase(o, out);
    if (*gf_cmd) return cmd_gf(o, out);
    if (*lp_cmd) return cmd_lp_verify(o, out);
    if (*search_cmd) return cmd_search(o, out);
    if (*dyn_cmd) return cmd_dynamics(o, out);
    if (*mc_cmd) return cmd_montecarlo(o, out);
    if (*verify_cmd) return cmd_verify(o, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  } catch (const SolverError& e) {
    err << "solver error: " << e.what() << '\n';
    return kExitInternal;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace scg::cli
