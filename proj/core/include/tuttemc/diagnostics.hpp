#pragma once

// Empirical checks of the variance argument behind the sampler: the
// common-neighbourhood graph G*, the second moment of Q^k, convergence on
// superdense graphs and the perfect-matching limit of power-law graphs.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "tuttemc/graph.hpp"
#include "tuttemc/sampler.hpp"

namespace tuttemc {

struct GStarReport {
  double c = 0.0;
  double d0 = 0.0;         // default c^2 / 5
  double d1 = 0.0;         // 5 / (2c)
  double threshold = 0.0;  // d0 * n / ln n common neighbours
  std::size_t gstar_edges = 0;
  std::size_t gstar_components = 0;
  unsigned bound_s = 0;           // ceil(d1 * sqrt(ln n))
  double bound_s_log_form = 0.0;  // d1 * ln n, the variant used inside the proof
  bool passed = false;            // gstar_components <= bound_s
};

struct GStarResult {
  Graph gstar;
  GStarReport report;
};

/// u ~ v in G* iff u != v and |N(u) & N(v)| >= d0 n / ln n. Neighbourhoods are
/// taken on the simple support of g (no loops, parallel edges counted once).
GStarResult build_gstar(const Graph& g, double c, std::optional<double> d0_override = {});

nlohmann::json to_json(const GStarReport& report);

struct SecondMomentReport {
  EstimatorRun run;  // estimate of E(Q^{2k}), sampled with weight Q^2
  double c = 0.0;
  unsigned bound_s = 0;
  /// 2 Q^{2s}; present only when Q >= 1.
  std::optional<double> bound;
  std::optional<bool> within_bound;
};

/// Monte Carlo E(Q^{2k(G_p)}). `c` defaults to the graph's own subdensity.
SecondMomentReport second_moment(const Graph& g, double p, double q_weight, std::uint64_t t,
                                 std::uint64_t seed, std::optional<double> c = {},
                                 unsigned threads = 1);

nlohmann::json to_json(const SecondMomentReport& report);

struct ConvergenceRow {
  std::size_t n = 0;
  double f_n = 0.0;
  bool skipped = false;
  std::string note;
  std::size_t min_degree = 0;
  double estimate = 0.0;   // E(Q^k) on the generated graph
  double rel_error = 0.0;  // |estimate - Q| / Q
  /// n^2 (1-p)^{n - 2 f(n)}, the disconnection bound from the convergence
  /// argument (capped at 1).
  double disconnect_bound = 0.0;
};

/// For each n, draws an f(n)-superdense graph (stream `seed`, index n) and
/// estimates E(Q^k) with t samples. Rows with f(n) >= n - 1 are skipped.
std::vector<ConvergenceRow> superdense_convergence(const GrowthFunction& f, double p,
                                                   double q_weight,
                                                   std::span<const std::size_t> n_grid,
                                                   std::uint64_t t, std::uint64_t seed,
                                                   unsigned threads = 1);

nlohmann::json to_json(const ConvergenceRow& row);

struct MatchingModelZ {
  std::size_t n = 0;
  double z = 0.0;           // (pQ + (1-p)Q^2)^{n/2}
  double beta_limit = 0.0;  // Q^{n/2}
  double ratio = 0.0;       // z / beta_limit = (p + (1-p)Q)^{n/2}
};

/// Closed-form Z of the perfect matching on n (even) vertices.
MatchingModelZ matching_model_z(std::size_t n, double p, double q_weight);

nlohmann::json to_json(const MatchingModelZ& z);

}  // namespace tuttemc
