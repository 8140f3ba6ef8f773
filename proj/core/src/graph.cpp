#include "tuttemc/graph.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>

#include "tuttemc/errors.hpp"

namespace tuttemc {

Graph::Graph(std::size_t n, std::vector<Edge> edges)
    : n_(n), edges_(std::move(edges)) {
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const auto& e = edges_[i];
    if (e.u >= n_ || e.v >= n_) {
      throw DomainError("edge " + std::to_string(i) + " (" +
                        std::to_string(e.u) + ", " + std::to_string(e.v) +
                        ") has an endpoint outside [0, " + std::to_string(n_) +
                        ")");
    }
  }
}

std::vector<std::size_t> Graph::degrees() const {
  std::vector<std::size_t> deg(n_, 0);
  for (const auto& e : edges_) {
    ++deg[e.u];
    ++deg[e.v];
  }
  return deg;
}

bool same_edge_multiset(const Graph& a, const Graph& b) {
  if (a.num_vertices() != b.num_vertices() || a.num_edges() != b.num_edges()) {
    return false;
  }
  auto normalized = [](const Graph& g) {
    std::vector<std::pair<Vertex, Vertex>> out;
    out.reserve(g.num_edges());
    for (const auto& e : g.edges()) {
      out.emplace_back(std::min(e.u, e.v), std::max(e.u, e.v));
    }
    std::sort(out.begin(), out.end());
    return out;
  };
  return normalized(a) == normalized(b);
}

// ---------------------------------------------------------------------------

EdgeSubset::EdgeSubset(std::size_t universe)
    : universe_(universe), words_((universe + 63) / 64, 0) {}

EdgeSubset EdgeSubset::full(std::size_t universe) {
  EdgeSubset s(universe);
  for (std::size_t i = 0; i < universe; ++i) s.insert(i);
  return s;
}

EdgeSubset EdgeSubset::from_mask(std::size_t universe, std::uint64_t mask) {
  if (universe > 64) throw DomainError("bitmask subsets need m <= 64");
  if (universe < 64 && (mask >> universe) != 0) {
    throw DomainError("mask has bits beyond the edge count");
  }
  EdgeSubset s(universe);
  if (universe > 0) s.words_[0] = mask;
  return s;
}

EdgeSubset EdgeSubset::from_indices(std::size_t universe,
                                    std::span<const std::size_t> indices) {
  EdgeSubset s(universe);
  for (auto i : indices) s.insert(i);
  return s;
}

std::size_t EdgeSubset::count() const {
  std::size_t c = 0;
  for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

bool EdgeSubset::contains(std::size_t i) const {
  if (i >= universe_) return false;
  return (words_[i / 64] >> (i % 64)) & 1u;
}

void EdgeSubset::insert(std::size_t i) {
  if (i >= universe_) {
    throw DomainError("edge index " + std::to_string(i) +
                      " out of range for " + std::to_string(universe_) +
                      " edges");
  }
  words_[i / 64] |= std::uint64_t{1} << (i % 64);
}

void EdgeSubset::erase(std::size_t i) {
  if (i < universe_) words_[i / 64] &= ~(std::uint64_t{1} << (i % 64));
}

std::uint64_t EdgeSubset::mask() const {
  if (universe_ > 64) throw DomainError("bitmask view needs m <= 64");
  return words_.empty() ? 0 : words_[0];
}

std::vector<std::size_t> EdgeSubset::indices() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < universe_; ++i) {
    if (contains(i)) out.push_back(i);
  }
  return out;
}

// ---------------------------------------------------------------------------

DisjointSets::DisjointSets(std::size_t n) { reset(n); }

void DisjointSets::reset(std::size_t n) {
  parent_.resize(n);
  std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  size_.assign(n, 1);
  sets_ = n;
}

std::size_t DisjointSets::find(std::size_t x) {
  std::size_t root = x;
  while (parent_[root] != root) root = parent_[root];
  while (parent_[x] != root) {
    std::size_t next = parent_[x];
    parent_[x] = root;
    x = next;
  }
  return root;
}

bool DisjointSets::unite(std::size_t x, std::size_t y) {
  x = find(x);
  y = find(y);
  if (x == y) return false;
  if (size_[x] < size_[y]) std::swap(x, y);
  parent_[y] = x;
  size_[x] += size_[y];
  --sets_;
  return true;
}

// ---------------------------------------------------------------------------

namespace {

void check_subset(const Graph& g, const EdgeSubset& a) {
  if (a.universe() != g.num_edges()) {
    throw DomainError("edge subset has universe " +
                      std::to_string(a.universe()) + " but the graph has " +
                      std::to_string(g.num_edges()) + " edges");
  }
}

}  // namespace

ComponentSummary components(const Graph& g, const EdgeSubset& a) {
  check_subset(g, a);
  DisjointSets sets(g.num_vertices());
  const auto edges = g.edges();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (a.contains(i)) sets.unite(edges[i].u, edges[i].v);
  }
  return {sets.num_sets(), g.num_vertices() - sets.num_sets()};
}

ComponentSummary components(const Graph& g) {
  return components(g, EdgeSubset::full(g.num_edges()));
}

Graph contract(const Graph& g, const EdgeSubset& a) {
  check_subset(g, a);
  const std::size_t n = g.num_vertices();
  DisjointSets sets(n);
  const auto edges = g.edges();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (a.contains(i)) sets.unite(edges[i].u, edges[i].v);
  }
  constexpr auto unassigned = static_cast<Vertex>(-1);
  std::vector<Vertex> label(n, unassigned);
  Vertex next = 0;
  std::vector<Vertex> image(n);
  for (std::size_t v = 0; v < n; ++v) {
    auto root = sets.find(v);
    if (label[root] == unassigned) label[root] = next++;
    image[v] = label[root];
  }
  std::vector<Edge> kept;
  kept.reserve(edges.size() - a.count());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (!a.contains(i)) kept.push_back({image[edges[i].u], image[edges[i].v]});
  }
  return Graph(next, std::move(kept));
}

std::size_t min_degree(const Graph& g) {
  const auto deg = g.degrees();
  if (deg.empty()) return 0;
  return *std::min_element(deg.begin(), deg.end());
}

// ---------------------------------------------------------------------------

GrowthFunction GrowthFunction::constant(double k) {
  if (!(k >= 0.0)) throw DomainError("f(n) = k needs k >= 0");
  return {Kind::Constant, k};
}

GrowthFunction GrowthFunction::power(double gamma) {
  if (!(gamma >= 0.0 && gamma < 1.0)) {
    throw DomainError("f(n) = n^gamma needs 0 <= gamma < 1 so that f(n) = o(n)");
  }
  return {Kind::Power, gamma};
}

GrowthFunction GrowthFunction::n_over_log() { return {Kind::NOverLog, 0.0}; }

namespace {

std::string strip_spaces(std::string_view text) {
  std::string out;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) out.push_back(ch);
  }
  return out;
}

double parse_double(std::string_view text, std::string_view what) {
  double value = 0.0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end) {
    throw ParseError("cannot parse " + std::string(what) + " from '" +
                     std::string(text) + "'");
  }
  return value;
}

}  // namespace

GrowthFunction GrowthFunction::parse(std::string_view text) {
  const std::string s = strip_spaces(text);
  if (s == "n/ln(n)" || s == "n/log(n)" || s == "n/lnn" || s == "n/logn") {
    return n_over_log();
  }
  if (s.rfind("n^", 0) == 0) {
    return power(parse_double(std::string_view(s).substr(2), "exponent"));
  }
  if (s == "n") throw DomainError("f(n) = n is not o(n)");
  return constant(parse_double(s, "f(n) constant"));
}

double GrowthFunction::operator()(double n) const {
  switch (kind_) {
    case Kind::Constant:
      return param_;
    case Kind::Power:
      return std::pow(n, param_);
    case Kind::NOverLog:
      return n / std::log(n);
  }
  return 0.0;
}

std::string GrowthFunction::to_string() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::Constant:
      os << param_;
      break;
    case Kind::Power:
      os << "n^" << param_;
      break;
    case Kind::NOverLog:
      os << "n/ln(n)";
      break;
  }
  return os.str();
}

std::string to_string(const DensityFamily& family) {
  std::ostringstream os;
  std::visit(
      [&](const auto& f) {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, EpsDense>) {
          os << "eps-dense(eps=" << f.eps << ")";
        } else if constexpr (std::is_same_v<F, Subdense>) {
          os << "subdense(c=" << f.c << ")";
        } else {
          os << "superdense(f=" << f.f.to_string() << ")";
        }
      },
      family);
  return os.str();
}

double density_threshold(std::size_t n, const DensityFamily& family) {
  if (n < 2) {
    throw DomainError("density classification needs n >= 2 (ln n must be positive)");
  }
  const double nd = static_cast<double>(n);
  return std::visit(
      [&](const auto& f) -> double {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, EpsDense>) {
          return f.eps * nd;
        } else if constexpr (std::is_same_v<F, Subdense>) {
          return f.c * nd / std::sqrt(std::log(nd));
        } else {
          return std::min(nd - f.f(nd), nd - 1.0);
        }
      },
      family);
}

bool classify_density(const Graph& g, const DensityFamily& family) {
  const double threshold = density_threshold(g.num_vertices(), family);
  return static_cast<double>(min_degree(g)) >= threshold;
}

double subdensity_constant(const Graph& g) {
  const std::size_t n = g.num_vertices();
  if (n < 2) throw DomainError("subdensity constant needs n >= 2");
  const double nd = static_cast<double>(n);
  return static_cast<double>(min_degree(g)) * std::sqrt(std::log(nd)) / nd;
}

// ---------------------------------------------------------------------------

namespace {

std::size_t parse_count(const std::string& token, std::size_t line,
                        std::string_view what) {
  std::size_t value = 0;
  const auto* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc{} || ptr != end) {
    throw ParseError("line " + std::to_string(line) + ": expected " +
                     std::string(what) + ", got '" + token + "'");
  }
  return value;
}

bool next_content_line(std::istream& in, std::string& line, std::size_t& no) {
  while (std::getline(in, line)) {
    ++no;
    auto first = line.find_first_not_of(" \t\r");
    if (first != std::string::npos) return true;
  }
  return false;
}

}  // namespace

Graph read_graph(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!next_content_line(in, line, line_no)) {
    throw ParseError("empty graph file: expected header 'n m'");
  }
  std::istringstream header(line);
  std::string n_tok, m_tok, extra;
  if (!(header >> n_tok >> m_tok) || (header >> extra)) {
    throw ParseError("line " + std::to_string(line_no) +
                     ": header must be exactly 'n m'");
  }
  const std::size_t n = parse_count(n_tok, line_no, "vertex count");
  const std::size_t m = parse_count(m_tok, line_no, "edge count");
  if (n > std::numeric_limits<Vertex>::max()) {
    throw ParseError("vertex count too large");
  }

  std::vector<Edge> edges;
  edges.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    if (!next_content_line(in, line, line_no)) {
      throw ParseError("expected " + std::to_string(m) + " edges, found " +
                       std::to_string(i));
    }
    std::istringstream row(line);
    std::string u_tok, v_tok;
    if (!(row >> u_tok >> v_tok) || (row >> extra)) {
      throw ParseError("line " + std::to_string(line_no) +
                       ": edge lines must be exactly 'u v'");
    }
    const auto u = parse_count(u_tok, line_no, "vertex index");
    const auto v = parse_count(v_tok, line_no, "vertex index");
    if (u >= n || v >= n) {
      throw ParseError("line " + std::to_string(line_no) + ": endpoint out of range [0, " +
                       std::to_string(n) + ")");
    }
    edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v)});
  }
  if (next_content_line(in, line, line_no)) {
    throw ParseError("line " + std::to_string(line_no) +
                     ": unexpected content after " + std::to_string(m) +
                     " edges");
  }
  return Graph(n, std::move(edges));
}

Graph read_graph_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open graph file '" + path.string() + "'");
  return read_graph(in);
}

void write_graph(std::ostream& out, const Graph& g) {
  out << g.num_vertices() << ' ' << g.num_edges() << '\n';
  for (const auto& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

void write_graph_file(const std::filesystem::path& path, const Graph& g) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write graph file '" + path.string() + "'");
  write_graph(out, g);
  if (!out) throw ParseError("write failed for '" + path.string() + "'");
}

}  // namespace tuttemc
