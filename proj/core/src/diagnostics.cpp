#include "tuttemc/diagnostics.hpp"

#include <bit>
#include <cmath>

#include "tuttemc/errors.hpp"
#include "tuttemc/generators.hpp"

namespace tuttemc {

GStarResult build_gstar(const Graph& g, double c, std::optional<double> d0_override) {
  const std::size_t n = g.num_vertices();
  if (n < 3) throw DomainError("G* needs n >= 3");
  if (!(c > 0.0)) throw DomainError("subdensity constant c must be positive");
  if (d0_override && !(*d0_override >= 0.0)) throw DomainError("d0 must be non-negative");

  GStarReport report;
  report.c = c;
  report.d0 = d0_override.value_or(c * c / 5.0);
  report.d1 = 5.0 / (2.0 * c);
  const double log_n = std::log(static_cast<double>(n));
  report.threshold = report.d0 * static_cast<double>(n) / log_n;
  report.bound_s = component_bound(n, c);
  report.bound_s_log_form = report.d1 * log_n;

  const std::size_t words = (n + 63) / 64;
  std::vector<std::uint64_t> nbr(n * words, 0);
  for (const auto& e : g.edges()) {
    if (e.is_loop()) continue;
    nbr[e.u * words + e.v / 64] |= std::uint64_t{1} << (e.v % 64);
    nbr[e.v * words + e.u / 64] |= std::uint64_t{1} << (e.u % 64);
  }

  std::vector<Edge> edges;
  DisjointSets sets(n);
  for (std::size_t u = 0; u < n; ++u) {
    const std::uint64_t* nu = &nbr[u * words];
    for (std::size_t v = u + 1; v < n; ++v) {
      const std::uint64_t* nv = &nbr[v * words];
      std::size_t common = 0;
      for (std::size_t w = 0; w < words; ++w) {
        common += static_cast<std::size_t>(std::popcount(nu[w] & nv[w]));
      }
      if (static_cast<double>(common) >= report.threshold) {
        edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v)});
        sets.unite(u, v);
      }
    }
  }
  report.gstar_edges = edges.size();
  report.gstar_components = sets.num_sets();
  report.passed = report.gstar_components <= report.bound_s;
  return {Graph(n, std::move(edges)), report};
}

nlohmann::json to_json(const GStarReport& report) {
  return {
      {"c", report.c},
      {"d0", report.d0},
      {"d1", report.d1},
      {"threshold", report.threshold},
      {"gstar_edges", report.gstar_edges},
      {"gstar_components", report.gstar_components},
      {"bound_s", report.bound_s},
      {"bound_s_log_form", report.bound_s_log_form},
      {"passed", report.passed},
  };
}

SecondMomentReport second_moment(const Graph& g, double p, double q_weight, std::uint64_t t,
                                 std::uint64_t seed, std::optional<double> c,
                                 unsigned threads) {
  if (!(q_weight > 0.0)) throw DomainError("cluster weight Q must be positive");
  SamplerConfig cfg;
  cfg.t_override = t;
  cfg.seed = seed;
  cfg.threads = threads;

  SecondMomentReport report;
  report.run = estimate_q_kappa_mean(g, p, q_weight * q_weight, cfg);
  report.run.q_weight = q_weight;

  if (c) {
    report.c = *c;
  } else if (g.num_vertices() >= 2) {
    report.c = subdensity_constant(g);
  }
  if (q_weight >= 1.0 && report.c > 0.0 && g.num_vertices() >= 2) {
    report.bound_s = component_bound(g.num_vertices(), report.c);
    report.bound = 2.0 * std::pow(q_weight, 2.0 * report.bound_s);
    report.within_bound = report.run.estimate <= *report.bound;
  }
  return report;
}

nlohmann::json to_json(const SecondMomentReport& report) {
  nlohmann::json out = {
      {"estimate", report.run.estimate},
      {"standard_error", report.run.standard_error()},
      {"t", report.run.t},
      {"seed", report.run.seed},
      {"p", report.run.p},
      {"Q", report.run.q_weight},
      {"c", report.c},
      {"bound_s", report.bound_s},
  };
  out["bound"] = report.bound ? nlohmann::json(*report.bound) : nlohmann::json(nullptr);
  out["within_bound"] =
      report.within_bound ? nlohmann::json(*report.within_bound) : nlohmann::json(nullptr);
  return out;
}

std::vector<ConvergenceRow> superdense_convergence(const GrowthFunction& f, double p,
                                                   double q_weight,
                                                   std::span<const std::size_t> n_grid,
                                                   std::uint64_t t, std::uint64_t seed,
                                                   unsigned threads) {
  if (!(q_weight > 0.0)) throw DomainError("cluster weight Q must be positive");
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("edge probability p must lie in [0, 1]");
  std::vector<ConvergenceRow> rows;
  for (const std::size_t n : n_grid) {
    ConvergenceRow row;
    row.n = n;
    const double nd = static_cast<double>(n);
    row.f_n = n >= 2 ? f(nd) : 0.0;
    if (n < 4 || row.f_n >= nd - 1.0) {
      row.skipped = true;
      row.note = n < 4 ? "n < 4" : "f(n) >= n - 1: no superdense graph at this size";
      rows.push_back(row);
      continue;
    }
    const std::uint64_t stream = derive_seed(seed, n);
    SplitMix64 rng(stream);
    const Graph g = gen_family({Superdense{f}, n}, rng);
    row.min_degree = min_degree(g);

    SamplerConfig cfg;
    cfg.t_override = t;
    cfg.seed = derive_seed(stream, 1);
    cfg.threads = threads;
    const auto run = estimate_q_kappa_mean(g, p, q_weight, cfg);
    row.estimate = run.estimate;
    row.rel_error = std::abs(run.estimate - q_weight) / q_weight;
    const double exponent = nd - 2.0 * row.f_n;
    row.disconnect_bound = std::min(1.0, nd * nd * std::pow(1.0 - p, exponent));
    rows.push_back(row);
  }
  return rows;
}

nlohmann::json to_json(const ConvergenceRow& row) {
  nlohmann::json out = {{"n", row.n}, {"f_n", row.f_n}, {"skipped", row.skipped}};
  if (row.skipped) {
    out["note"] = row.note;
    return out;
  }
  out["min_degree"] = row.min_degree;
  out["estimate"] = row.estimate;
  out["rel_error"] = row.rel_error;
  out["disconnect_bound"] = row.disconnect_bound;
  return out;
}

MatchingModelZ matching_model_z(std::size_t n, double p, double q_weight) {
  if (n % 2 != 0) throw DomainError("the matching model needs an even vertex count");
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("edge probability p must lie in [0, 1]");
  if (!(q_weight > 0.0)) throw DomainError("cluster weight Q must be positive");
  const double half = static_cast<double>(n / 2);
  MatchingModelZ out;
  out.n = n;
  out.z = std::pow(p * q_weight + (1.0 - p) * q_weight * q_weight, half);
  out.beta_limit = std::pow(q_weight, half);
  out.ratio = std::pow(p + (1.0 - p) * q_weight, half);
  return out;
}

nlohmann::json to_json(const MatchingModelZ& z) {
  return {{"n", z.n}, {"z", z.z}, {"beta_limit", z.beta_limit}, {"ratio", z.ratio}};
}

}  // namespace tuttemc
