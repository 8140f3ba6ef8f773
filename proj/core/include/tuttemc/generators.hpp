#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "tuttemc/graph.hpp"
#include "tuttemc/rng.hpp"

namespace tuttemc {

// Deterministic families.
Graph complete_graph(std::size_t n);
Graph path_graph(std::size_t n);
Graph cycle_graph(std::size_t n);
Graph star_graph(std::size_t leaves);  // K_{1,leaves}, centre 0
/// Edges (0,1), (2,3), ...; n must be even.
Graph perfect_matching(std::size_t n);
/// K_n without the matching (0,1), (2,3), ...; n must be even.
Graph complete_minus_matching(std::size_t n);

/// (alpha, beta) power-law degree model: floor(e^alpha / i^beta) vertices of
/// degree i for i = 1..Delta, Delta = floor(e^{alpha/beta}).
struct PlgSpec {
  double alpha = 0.0;
  double beta = 0.0;

  void validate() const;
  std::uint64_t max_degree() const;
  /// Entry i-1 holds the number of vertices of degree i.
  std::vector<std::uint64_t> degree_counts() const;
  std::uint64_t num_vertices() const;
  /// Total number of vertex copies, sum of i * count_i.
  std::uint64_t total_copies() const;
};

struct PlgGraph {
  Graph graph;
  /// Prescribed degree of each vertex (vertices ordered by degree).
  std::vector<std::size_t> prescribed;
  /// Vertex that lost one copy because the copy count was odd.
  std::optional<Vertex> dropped_copy;
  bool simplified = false;
};

/// Uniform perfect matching on the vertex copies, collapsed to a multigraph.
/// With `simplify`, loops are dropped and parallel edges merged, which leaves
/// the exact model.
PlgGraph gen_plg(const PlgSpec& spec, SplitMix64& rng, bool simplify = false);

struct FamilySpec {
  DensityFamily family;
  std::size_t n = 0;
};

/// A simple graph on n vertices in the requested density family: K_n with
/// each edge deleted independently at the largest rate that keeps the
/// expected degree at the threshold, then deficient vertices repaired with
/// random deleted edges.
Graph gen_family(const FamilySpec& spec, SplitMix64& rng);

/// Riemann zeta for s > 1 by direct summation with an Euler-Maclaurin tail.
double riemann_zeta(double s);

struct PlgAsymptotics {
  double n_pred = 0.0;
  double m_pred = 0.0;
};

PlgAsymptotics plg_asymptotics(const PlgSpec& spec);

/// Molloy-Reed sum(i (i-2) lambda_i) over a degree table (entry i-1 counts
/// degree i), lambda_i = count_i / n.
double molloy_reed_q_finite(std::span<const std::uint64_t> degree_counts);
/// (zeta(beta-2) - 2 zeta(beta-1)) / zeta(beta); only defined for beta > 3.
double molloy_reed_q_closed(double beta);

struct MolloyReedQ {
  double finite = 0.0;
  std::optional<double> closed_form;
};

MolloyReedQ molloy_reed_q(const PlgSpec& spec);

nlohmann::json to_json(const PlgSpec& spec);

}  // namespace tuttemc
