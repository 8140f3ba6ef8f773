#include "cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <fstream>
#include <optional>
#include <random>
#include <ostream>

#include <nlohmann/json.hpp>

#include "tuttemc/diagnostics.hpp"
#include "tuttemc/errors.hpp"
#include "tuttemc/exact.hpp"
#include "tuttemc/generators.hpp"
#include "tuttemc/graph.hpp"
#include "tuttemc/rational.hpp"
#include "tuttemc/sampler.hpp"

namespace tuttemc::cli {
namespace {

using nlohmann::json;

std::uint64_t fresh_seed() {
  std::random_device rd;
  return (std::uint64_t{rd()} << 32) ^ std::uint64_t{rd()};
}

Rational parse_value(const std::string& flag, const std::string& text) {
  try {
    return parse_rational(text);
  } catch (const ParseError& e) {
    throw ParseError(flag + ": " + e.what());
  }
}

double parse_real(const std::string& flag, const std::string& text) {
  return to_double(parse_value(flag, text));
}

std::vector<std::size_t> parse_list(const std::string& flag, const std::string& text) {
  std::vector<std::size_t> out;
  if (text.empty()) return out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    const std::string item = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    std::size_t value = 0;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
    if (ec != std::errc() || ptr != item.data() + item.size() || item.empty()) {
      throw ParseError(flag + ": expected a comma-separated list of non-negative integers, got '" + text + "'");
    }
    out.push_back(value);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

// "eps:0.25", "sub:2" or "super:n^0.5".
DensityFamily parse_family(const std::string& text) {
  const std::size_t colon = text.find(':');
  if (colon == std::string::npos) {
    throw ParseError("family must look like eps:<eps>, sub:<c> or super:<f(n)>, got '" + text + "'");
  }
  const std::string kind = text.substr(0, colon);
  const std::string arg = text.substr(colon + 1);
  if (kind == "eps") return EpsDense{parse_real("--family", arg)};
  if (kind == "sub") return Subdense{parse_real("--family", arg)};
  if (kind == "super") return Superdense{GrowthFunction::parse(arg)};
  throw ParseError("unknown density family '" + kind + "' (expected eps, sub or super)");
}

void print_json(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

struct Common {
  std::string graph;
  std::string format = "json";
  std::optional<std::uint64_t> seed;
  unsigned threads = 1;

  std::uint64_t effective_seed() const { return seed ? *seed : fresh_seed(); }
  Graph load() const { return read_graph_file(graph); }
  void json_only() const {
    if (format != "json") throw DomainError("--format csv is only available for diagnose superdense-sweep");
  }
};

void add_format(CLI::App* cmd, Common& c) {
  cmd->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
}

void add_graph(CLI::App* cmd, Common& c) {
  cmd->add_option("--graph", c.graph, "Graph file (\"n m\" header, then m lines \"u v\")")->required();
}

void add_seed(CLI::App* cmd, Common& c) {
  cmd->add_option_function<std::uint64_t>(
      "--seed", [&c](std::uint64_t v) { c.seed = v; },
      "RNG seed (fresh entropy when omitted; always echoed)");
  cmd->add_option("--threads", c.threads, "Worker threads; never changes results")->check(CLI::PositiveNumber);
}

struct EstimateArgs {
  Common common;
  std::string x, y, p, q, edges;
  std::string epsilon = "0.1";
  std::string variance_bound, density_c, guarantee;
  std::optional<std::uint64_t> t;
  unsigned repetitions = 1;

  SamplerConfig config() const {
    SamplerConfig cfg;
    cfg.epsilon = parse_real("--epsilon", epsilon);
    cfg.t_override = t;
    if (!variance_bound.empty()) cfg.variance_bound = parse_real("--variance-bound", variance_bound);
    if (!density_c.empty()) cfg.density_c = parse_real("--c", density_c);
    if (!guarantee.empty()) cfg.guarantee = parse_family(guarantee);
    cfg.seed = common.effective_seed();
    cfg.repetitions = repetitions;
    cfg.threads = common.threads;
    return cfg;
  }
};

CLI::App* add_estimate(CLI::App& app, const std::string& name, const std::string& about,
                       EstimateArgs& a) {
  auto* cmd = app.add_subcommand(name, about);
  add_graph(cmd, a.common);
  add_seed(cmd, a.common);
  add_format(cmd, a.common);
  cmd->add_option("--epsilon", a.epsilon, "Relative error target");
  cmd->add_option_function<std::uint64_t>(
      "--t", [&a](std::uint64_t v) { a.t = v; }, "Sample count (overrides any variance bound)");
  cmd->add_option("--variance-bound", a.variance_bound, "Bound B on E(Q^2k)/E(Q^k)^2; t = ceil(2B/eps^2)");
  cmd->add_option("--c", a.density_c, "Subdensity constant for the default bound");
  cmd->add_option("--guarantee", a.guarantee, "Warn unless the graph is in this family (eps:, sub:, super:)");
  cmd->add_option("--repetitions", a.repetitions, "Odd number of runs combined by their median");
  return cmd;
}

EdgeSubset parse_edges(const Graph& g, const std::string& text) {
  const auto indices = parse_list("--edges", text);
  return EdgeSubset::from_indices(g.num_edges(), indices);
}

int estimate_tutte_cmd(const EstimateArgs& a, std::ostream& out) {
  a.common.json_only();
  const Graph g = a.common.load();
  if (a.x.empty() || a.y.empty()) throw ParseError("estimate-tutte needs --x and --y");
  const auto run = estimate_tutte(g, parse_real("--x", a.x), parse_real("--y", a.y), a.config());
  json j = to_json(run);
  j["x"] = parse_real("--x", a.x);
  j["y"] = parse_real("--y", a.y);
  print_json(out, j);
  return 0;
}

RCConfig<double> rc_from(const EstimateArgs& a) {
  if (a.p.empty() || a.q.empty()) throw ParseError("--p and --Q are required");
  return {parse_real("--p", a.p), parse_real("--Q", a.q)};
}

int estimate_z_cmd(const EstimateArgs& a, std::ostream& out) {
  a.common.json_only();
  const Graph g = a.common.load();
  print_json(out, to_json(estimate_z(g, rc_from(a), a.config())));
  return 0;
}

int estimate_lambda_cmd(const EstimateArgs& a, std::ostream& out) {
  a.common.json_only();
  const Graph g = a.common.load();
  const auto rc = rc_from(a);
  const auto subset = parse_edges(g, a.edges);
  const auto cfg = a.config();
  json j = to_json(estimate_lambda(g, rc, subset, cfg));
  j["seed"] = cfg.seed;
  j["edges"] = subset.indices();
  print_json(out, j);
  return 0;
}

struct ExactArgs {
  Common common;
  std::string quantity = "tutte";
  std::string x, y, p, q, edges;
  long colors = 0;
  CLI::Option* colors_opt = nullptr;
};

int exact_cmd(const ExactArgs& a, std::ostream& out) {
  a.common.json_only();
  const Graph g = a.common.load();
  json j = {{"quantity", a.quantity}, {"n", g.num_vertices()}, {"m", g.num_edges()}};
  Rational value;
  if (a.quantity == "tutte" || a.quantity == "delcon") {
    if (a.x.empty() || a.y.empty()) throw ParseError(a.quantity + " needs --x and --y");
    const Rational x = parse_value("--x", a.x);
    const Rational y = parse_value("--y", a.y);
    value = a.quantity == "tutte" ? tutte_statesum(g, x, y) : tutte_delcon(g, x, y);
    j["x"] = to_string(x);
    j["y"] = to_string(y);
  } else if (a.quantity == "chromatic") {
    if (!a.colors_opt->count()) throw ParseError("chromatic needs --colors");
    value = chromatic_eval(g, a.colors);
    j["colors"] = a.colors;
  } else {
    if (a.p.empty() || a.q.empty()) throw ParseError(a.quantity + " needs --p and --Q");
    const RCConfig<Rational> rc{parse_value("--p", a.p), parse_value("--Q", a.q)};
    j["p"] = to_string(rc.p);
    j["Q"] = to_string(rc.q_weight);
    if (a.quantity == "z") {
      value = z_exact(g, rc);
    } else {
      const auto subset = parse_edges(g, a.edges);
      j["edges"] = subset.indices();
      value = a.quantity == "mu" ? mu_exact(g, rc, subset) : lambda_exact(g, rc, subset);
    }
  }
  j["value"] = to_string(value);
  j["value_double"] = to_double(value);
  print_json(out, j);
  return 0;
}

struct GenerateArgs {
  Common common;
  std::string alpha, beta, family, out_path;
  std::size_t n = 0;
  bool simplify = false;
};

void emit_graph(const GenerateArgs& a, const Graph& g, json meta, std::ostream& out,
                std::ostream& err) {
  meta["min_degree"] = g.num_vertices() > 0 ? min_degree(g) : 0;
  meta["n"] = g.num_vertices();
  meta["m"] = g.num_edges();
  if (a.out_path.empty()) {
    write_graph(out, g);
    err << "seed: " << meta["seed"].get<std::uint64_t>() << '\n';
    return;
  }
  write_graph_file(a.out_path, g);
  const std::string sidecar = a.out_path + ".json";
  std::ofstream file(sidecar);
  if (!file) throw ParseError("cannot write metadata file '" + sidecar + "'");
  file << meta.dump(2) << '\n';
  if (!file) throw ParseError("write failed for '" + sidecar + "'");
  print_json(out, meta);
}

int generate_plg_cmd(const GenerateArgs& a, std::ostream& out, std::ostream& err) {
  a.common.json_only();
  const PlgSpec spec{parse_real("--alpha", a.alpha), parse_real("--beta", a.beta)};
  const std::uint64_t seed = a.common.effective_seed();
  SplitMix64 rng(seed);
  const auto plg = gen_plg(spec, rng, a.simplify);
  json meta = {{"family", "plg"},
               {"params", {{"alpha", spec.alpha}, {"beta", spec.beta}, {"simplify", a.simplify}}},
               {"seed", seed}};
  if (plg.dropped_copy) meta["dropped_copy"] = *plg.dropped_copy;
  emit_graph(a, plg.graph, std::move(meta), out, err);
  return 0;
}

int generate_family_cmd(const GenerateArgs& a, std::ostream& out, std::ostream& err) {
  a.common.json_only();
  const DensityFamily family = parse_family(a.family);
  const std::uint64_t seed = a.common.effective_seed();
  SplitMix64 rng(seed);
  const Graph g = gen_family({family, a.n}, rng);
  json meta = {{"family", to_string(family)}, {"params", {{"n", a.n}, {"family", a.family}}}, {"seed", seed}};
  emit_graph(a, g, std::move(meta), out, err);
  return 0;
}

struct DiagnoseArgs {
  Common common;
  std::string c, d0, p, q, f, grid = "50,100,200", alpha, beta;
  std::uint64_t t = 10000;
  std::size_t n = 0;
};

int gstar_cmd(const DiagnoseArgs& a, std::ostream& out) {
  a.common.json_only();
  const Graph g = a.common.load();
  const double c = a.c.empty() ? subdensity_constant(g) : parse_real("--c", a.c);
  std::optional<double> d0;
  if (!a.d0.empty()) d0 = parse_real("--d0", a.d0);
  json j = to_json(build_gstar(g, c, d0).report);
  j["n"] = g.num_vertices();
  print_json(out, j);
  return 0;
}

int second_moment_cmd(const DiagnoseArgs& a, std::ostream& out) {
  a.common.json_only();
  const Graph g = a.common.load();
  std::optional<double> c;
  if (!a.c.empty()) c = parse_real("--c", a.c);
  if (a.p.empty() || a.q.empty()) throw ParseError("second-moment needs --p and --Q");
  const auto report = second_moment(g, parse_real("--p", a.p), parse_real("--Q", a.q), a.t,
                                    a.common.effective_seed(), c, a.common.threads);
  print_json(out, to_json(report));
  return 0;
}

int sweep_cmd(const DiagnoseArgs& a, std::ostream& out, std::ostream& err) {
  if (a.p.empty() || a.q.empty()) throw ParseError("superdense-sweep needs --p and --Q");
  const auto f = GrowthFunction::parse(a.f);
  const auto grid = parse_list("--n-grid", a.grid);
  const std::uint64_t seed = a.common.effective_seed();
  const auto rows = superdense_convergence(f, parse_real("--p", a.p), parse_real("--Q", a.q), grid,
                                           a.t, seed, a.common.threads);
  if (a.common.format == "csv") {
    err << "seed: " << seed << '\n';
    out << "n,estimate,rel_error\n";
    for (const auto& row : rows) {
      if (row.skipped) continue;
      out << row.n << ',' << json(row.estimate).dump() << ',' << json(row.rel_error).dump() << '\n';
    }
    return 0;
  }
  json j = {{"f", f.to_string()}, {"seed", seed}, {"t", a.t}, {"rows", json::array()}};
  for (const auto& row : rows) j["rows"].push_back(to_json(row));
  print_json(out, j);
  return 0;
}

int matching_cmd(const DiagnoseArgs& a, std::ostream& out) {
  a.common.json_only();
  if (a.p.empty() || a.q.empty()) throw ParseError("matching-z needs --p and --Q");
  print_json(out, to_json(matching_model_z(a.n, parse_real("--p", a.p), parse_real("--Q", a.q))));
  return 0;
}

int plg_report_cmd(const DiagnoseArgs& a, std::ostream& out) {
  a.common.json_only();
  const PlgSpec spec{parse_real("--alpha", a.alpha), parse_real("--beta", a.beta)};
  const auto asym = plg_asymptotics(spec);
  const auto mr = molloy_reed_q(spec);
  json j = {{"spec", to_json(spec)},
            {"n_pred", asym.n_pred},
            {"m_pred", asym.m_pred},
            {"molloy_reed_finite", mr.finite}};
  j["molloy_reed_closed"] = mr.closed_form ? json(*mr.closed_form) : json(nullptr);
  print_json(out, j);
  return 0;
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Tutte polynomial and random-cluster estimation", "tuttemc"};
  app.require_subcommand(1);

  EstimateArgs est;
  auto* cmd_tutte = add_estimate(app, "estimate-tutte", "Estimate T(x, y) for x > 1, y > 1", est);
  cmd_tutte->add_option("--x", est.x, "x coordinate")->required();
  cmd_tutte->add_option("--y", est.y, "y coordinate")->required();
  auto* cmd_z = add_estimate(app, "estimate-z", "Estimate the random-cluster partition function", est);
  cmd_z->add_option("--p", est.p, "Edge probability")->required();
  cmd_z->add_option("--Q", est.q, "Cluster weight")->required();
  auto* cmd_lambda = add_estimate(app, "estimate-lambda", "Estimate lambda(A) = mu(all of A open)", est);
  cmd_lambda->add_option("--p", est.p, "Edge probability")->required();
  cmd_lambda->add_option("--Q", est.q, "Cluster weight")->required();
  cmd_lambda->add_option("--edges", est.edges, "Edge indices of A, e.g. 0,2,5");

  ExactArgs ex;
  auto* cmd_exact = app.add_subcommand("exact", "Exact rational evaluation by enumeration");
  add_graph(cmd_exact, ex.common);
  add_format(cmd_exact, ex.common);
  cmd_exact->add_option("--quantity", ex.quantity, "What to evaluate")
      ->check(CLI::IsMember({"tutte", "delcon", "chromatic", "z", "mu", "lambda"}));
  cmd_exact->add_option("--x", ex.x, "x coordinate");
  cmd_exact->add_option("--y", ex.y, "y coordinate");
  cmd_exact->add_option("--p", ex.p, "Edge probability");
  cmd_exact->add_option("--Q", ex.q, "Cluster weight");
  cmd_exact->add_option("--edges", ex.edges, "Edge indices of A for mu and lambda");
  ex.colors_opt = cmd_exact->add_option("--colors", ex.colors, "Number of colours for chromatic");

  GenerateArgs gen;
  auto* cmd_gen = app.add_subcommand("generate", "Generate graphs");
  cmd_gen->require_subcommand(1);
  auto* cmd_plg = cmd_gen->add_subcommand("plg", "(alpha, beta) power-law multigraph");
  cmd_plg->add_option("--alpha", gen.alpha, "alpha")->required();
  cmd_plg->add_option("--beta", gen.beta, "beta")->required();
  cmd_plg->add_flag("--simplify", gen.simplify, "Drop loops and merge parallel edges");
  auto* cmd_family = cmd_gen->add_subcommand("family", "Graph in a density family");
  cmd_family->add_option("--family", gen.family, "eps:<eps>, sub:<c> or super:<f(n)>")->required();
  cmd_family->add_option("--n", gen.n, "Vertex count")->required();
  for (auto* leaf : {cmd_plg, cmd_family}) {
    add_seed(leaf, gen.common);
    add_format(leaf, gen.common);
    leaf->add_option("--out", gen.out_path, "Write the graph here and metadata to <out>.json");
  }

  DiagnoseArgs diag;
  auto* cmd_diag = app.add_subcommand("diagnose", "Empirical checks of the variance analysis");
  cmd_diag->require_subcommand(1);
  auto* cmd_gstar = cmd_diag->add_subcommand("gstar", "Common-neighbourhood graph G* and its components");
  add_graph(cmd_gstar, diag.common);
  cmd_gstar->add_option("--c", diag.c, "Subdensity constant (default: the graph's own)");
  cmd_gstar->add_option("--d0", diag.d0, "Threshold coefficient (default c^2/5)");
  auto* cmd_second = cmd_diag->add_subcommand("second-moment", "Monte Carlo E(Q^2k) against 2Q^2s");
  add_graph(cmd_second, diag.common);
  add_seed(cmd_second, diag.common);
  cmd_second->add_option("--c", diag.c, "Subdensity constant (default: the graph's own)");
  auto* cmd_sweep = cmd_diag->add_subcommand("superdense-sweep", "E(Q^k) on superdense graphs over n");
  add_seed(cmd_sweep, diag.common);
  cmd_sweep->add_option("--f", diag.f, "Slack function: constant, n^g or n/ln(n)")->required();
  cmd_sweep->add_option("--n-grid", diag.grid, "Comma-separated vertex counts");
  auto* cmd_matching = cmd_diag->add_subcommand("matching-z", "Closed-form Z of a perfect matching");
  cmd_matching->add_option("--n", diag.n, "Even vertex count")->required();
  auto* cmd_plg_report = cmd_diag->add_subcommand("plg", "Power-law asymptotics and Molloy-Reed sum");
  cmd_plg_report->add_option("--alpha", diag.alpha, "alpha")->required();
  cmd_plg_report->add_option("--beta", diag.beta, "beta")->required();
  for (auto* leaf : {cmd_second, cmd_sweep, cmd_matching}) {
    leaf->add_option("--p", diag.p, "Edge probability")->required();
    leaf->add_option("--Q", diag.q, "Cluster weight")->required();
  }
  for (auto* leaf : {cmd_second, cmd_sweep}) leaf->add_option("--t", diag.t, "Sample count");
  for (auto* leaf : {cmd_gstar, cmd_second, cmd_sweep, cmd_matching, cmd_plg_report}) {
    add_format(leaf, diag.common);
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (cmd_tutte->parsed()) return estimate_tutte_cmd(est, out);
    if (cmd_z->parsed()) return estimate_z_cmd(est, out);
    if (cmd_lambda->parsed()) return estimate_lambda_cmd(est, out);
    if (cmd_exact->parsed()) return exact_cmd(ex, out);
    if (cmd_plg->parsed()) return generate_plg_cmd(gen, out, err);
    if (cmd_family->parsed()) return generate_family_cmd(gen, out, err);
    if (cmd_gstar->parsed()) return gstar_cmd(diag, out);
    if (cmd_second->parsed()) return second_moment_cmd(diag, out);
    if (cmd_sweep->parsed()) return sweep_cmd(diag, out, err);
    if (cmd_matching->parsed()) return matching_cmd(diag, out);
    if (cmd_plg_report->parsed()) return plg_report_cmd(diag, out);
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  err << "error: no command\n";
  return 1;
}

}  // namespace tuttemc::cli
