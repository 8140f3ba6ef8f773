#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace tuttemc {

using Vertex = std::uint32_t;

struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  bool is_loop() const { return u == v; }
  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Undirected multigraph on vertices [0, n). Loops and parallel edges are
/// allowed; an edge's identity is its position in the edge list.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n, std::vector<Edge> edges = {});

  std::size_t num_vertices() const { return n_; }
  std::size_t num_edges() const { return edges_.size(); }
  std::span<const Edge> edges() const { return edges_; }
  const Edge& edge(std::size_t i) const { return edges_.at(i); }

  /// Loops count twice, parallel edges once each.
  std::vector<std::size_t> degrees() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
};

/// True when both graphs have the same vertex count and the same multiset of
/// (unordered) edges.
bool same_edge_multiset(const Graph& a, const Graph& b);

/// Subset of the edge indices [0, m) of some graph.
class EdgeSubset {
 public:
  explicit EdgeSubset(std::size_t universe = 0);

  static EdgeSubset full(std::size_t universe);
  static EdgeSubset from_mask(std::size_t universe, std::uint64_t mask);
  static EdgeSubset from_indices(std::size_t universe,
                                 std::span<const std::size_t> indices);

  std::size_t universe() const { return universe_; }
  std::size_t count() const;
  bool empty() const { return count() == 0; }
  bool contains(std::size_t i) const;
  void insert(std::size_t i);
  void erase(std::size_t i);

  /// Only valid for universe() <= 64.
  std::uint64_t mask() const;
  std::vector<std::size_t> indices() const;

  friend bool operator==(const EdgeSubset&, const EdgeSubset&) = default;

 private:
  std::size_t universe_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Union-find with path compression and union by size.
class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n = 0);

  void reset(std::size_t n);
  std::size_t find(std::size_t x);
  /// Returns true if x and y were in different sets.
  bool unite(std::size_t x, std::size_t y);
  std::size_t num_sets() const { return sets_; }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
  std::size_t sets_ = 0;
};

struct ComponentSummary {
  std::size_t kappa = 0;  // components of (V, A), isolated vertices included
  std::size_t rank = 0;   // n - kappa
};

ComponentSummary components(const Graph& g, const EdgeSubset& a);
ComponentSummary components(const Graph& g);  // all edges

/// G/A: one vertex per component of (V, A), numbered by the smallest original
/// vertex they contain. The edge list is every edge not in A, in original
/// order, with loops and parallel edges kept.
Graph contract(const Graph& g, const EdgeSubset& a);

std::size_t min_degree(const Graph& g);

/// Growth function f(n) used by the superdense family.
class GrowthFunction {
 public:
  enum class Kind { Constant, Power, NOverLog };

  static GrowthFunction constant(double k);
  static GrowthFunction power(double gamma);  // n^gamma, gamma < 1
  static GrowthFunction n_over_log();         // n / ln n

  /// Accepts "3", "n^0.5", "n/ln(n)" (also "n/log(n)", "n/ln n").
  static GrowthFunction parse(std::string_view text);

  double operator()(double n) const;
  Kind kind() const { return kind_; }
  double parameter() const { return param_; }
  std::string to_string() const;

 private:
  GrowthFunction(Kind kind, double param) : kind_(kind), param_(param) {}
  Kind kind_;
  double param_;
};

struct EpsDense {
  double eps;
};
struct Subdense {
  double c;
};
struct Superdense {
  GrowthFunction f;
};
using DensityFamily = std::variant<EpsDense, Subdense, Superdense>;

std::string to_string(const DensityFamily& family);

/// Minimum-degree threshold for n vertices. Logarithms are natural. The
/// superdense threshold n - f(n) is capped at n - 1 so that K_n qualifies for
/// every f >= 0. Requires n >= 2.
double density_threshold(std::size_t n, const DensityFamily& family);
bool classify_density(const Graph& g, const DensityFamily& family);

/// The largest c for which g is c*n/sqrt(ln n)-subdense. Requires n >= 2.
double subdensity_constant(const Graph& g);

// Text format: "n m" on the first line, then m lines "u v" (0-based).
Graph read_graph(std::istream& in);
Graph read_graph_file(const std::filesystem::path& path);
void write_graph(std::ostream& out, const Graph& g);
void write_graph_file(const std::filesystem::path& path, const Graph& g);

}  // namespace tuttemc
