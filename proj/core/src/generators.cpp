#include "tuttemc/generators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <string>

#include "tuttemc/errors.hpp"

namespace tuttemc {

namespace {

constexpr std::uint64_t kMaxPlgDegree = 100'000'000;
constexpr std::uint64_t kMaxPlgCopies = 200'000'000;
constexpr std::size_t kMaxFamilyVertices = 20'000;

// floor() that forgives the last-ulp error of exp/pow, so that
// floor(exp(log(4))) is 4 rather than 3.
std::uint64_t tolerant_floor(double v) {
  if (!(v >= 0.0)) return 0;
  return static_cast<std::uint64_t>(std::floor(v + v * 1e-12));
}

}  // namespace

Graph complete_graph(std::size_t n) {
  std::vector<Edge> edges;
  edges.reserve(n * (n > 0 ? n - 1 : 0) / 2);
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v)});
    }
  }
  return Graph(n, std::move(edges));
}

Graph path_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (std::size_t v = 1; v < n; ++v) {
    edges.push_back({static_cast<Vertex>(v - 1), static_cast<Vertex>(v)});
  }
  return Graph(n, std::move(edges));
}

Graph cycle_graph(std::size_t n) {
  if (n < 3) throw DomainError("a simple cycle needs n >= 3");
  const Graph path = path_graph(n);
  std::vector<Edge> edges(path.edges().begin(), path.edges().end());
  edges.push_back({static_cast<Vertex>(n - 1), 0});
  return Graph(n, std::move(edges));
}

Graph star_graph(std::size_t leaves) {
  std::vector<Edge> edges;
  for (std::size_t v = 1; v <= leaves; ++v) edges.push_back({0, static_cast<Vertex>(v)});
  return Graph(leaves + 1, std::move(edges));
}

Graph perfect_matching(std::size_t n) {
  if (n % 2 != 0) throw DomainError("a perfect matching needs an even vertex count");
  std::vector<Edge> edges;
  for (std::size_t v = 0; v < n; v += 2) {
    edges.push_back({static_cast<Vertex>(v), static_cast<Vertex>(v + 1)});
  }
  return Graph(n, std::move(edges));
}

Graph complete_minus_matching(std::size_t n) {
  if (n % 2 != 0) throw DomainError("removing a perfect matching needs an even vertex count");
  std::vector<Edge> edges;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      if (u % 2 == 0 && v == u + 1) continue;
      edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v)});
    }
  }
  return Graph(n, std::move(edges));
}

// ---------------------------------------------------------------------------

void PlgSpec::validate() const {
  if (!(alpha > 0.0) || !(beta > 0.0) || !std::isfinite(alpha) || !std::isfinite(beta)) {
    throw DomainError("power-law model needs alpha > 0 and beta > 0");
  }
  const double delta = std::exp(alpha / beta);
  if (!(delta < static_cast<double>(kMaxPlgDegree))) {
    throw DomainError("maximum degree e^(alpha/beta) is too large to tabulate");
  }
  if (tolerant_floor(delta) < 1) throw DomainError("maximum degree Delta < 1");
}

std::uint64_t PlgSpec::max_degree() const {
  validate();
  return tolerant_floor(std::exp(alpha / beta));
}

std::vector<std::uint64_t> PlgSpec::degree_counts() const {
  const auto delta = max_degree();
  std::vector<std::uint64_t> counts(delta);
  for (std::uint64_t i = 1; i <= delta; ++i) {
    counts[i - 1] = tolerant_floor(std::exp(alpha - beta * std::log(static_cast<double>(i))));
  }
  return counts;
}

std::uint64_t PlgSpec::num_vertices() const {
  const auto counts = degree_counts();
  return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
}

std::uint64_t PlgSpec::total_copies() const {
  const auto counts = degree_counts();
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < counts.size(); ++i) total += (i + 1) * counts[i];
  return total;
}

PlgGraph gen_plg(const PlgSpec& spec, SplitMix64& rng, bool simplify) {
  const auto counts = spec.degree_counts();
  const auto n = std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
  if (n > std::numeric_limits<Vertex>::max()) throw DomainError("too many vertices");
  if (spec.total_copies() > kMaxPlgCopies) {
    throw DomainError("power-law graph has too many vertex copies to generate");
  }

  PlgGraph out;
  out.prescribed.reserve(n);
  for (std::size_t i = 0; i < counts.size(); ++i) {
    out.prescribed.insert(out.prescribed.end(), counts[i], i + 1);
  }

  std::vector<Vertex> copies;
  for (std::size_t v = 0; v < out.prescribed.size(); ++v) {
    copies.insert(copies.end(), out.prescribed[v], static_cast<Vertex>(v));
  }
  if (copies.size() % 2 != 0) {
    // The last vertex has the maximum degree; its final copy goes.
    out.dropped_copy = copies.back();
    copies.pop_back();
  }
  std::shuffle(copies.begin(), copies.end(), rng);

  std::vector<Edge> edges;
  edges.reserve(copies.size() / 2);
  for (std::size_t i = 0; i + 1 < copies.size(); i += 2) {
    edges.push_back({copies[i], copies[i + 1]});
  }
  if (simplify) {
    std::set<std::pair<Vertex, Vertex>> seen;
    std::vector<Edge> simple;
    for (const auto& e : edges) {
      if (e.is_loop()) continue;
      if (seen.emplace(std::min(e.u, e.v), std::max(e.u, e.v)).second) simple.push_back(e);
    }
    edges = std::move(simple);
    out.simplified = true;
  }
  out.graph = Graph(n, std::move(edges));
  return out;
}

Graph gen_family(const FamilySpec& spec, SplitMix64& rng) {
  const std::size_t n = spec.n;
  if (n < 4) throw DomainError("family generator needs n >= 4");
  if (n > kMaxFamilyVertices) throw DomainError("family generator is limited to n <= 20000");
  const double threshold = density_threshold(n, spec.family);
  const double needed = std::max(0.0, std::ceil(threshold));
  if (needed > static_cast<double>(n - 1)) {
    throw DomainError("infeasible family " + to_string(spec.family) + " at n = " +
                      std::to_string(n) + ": minimum degree " + std::to_string(threshold) +
                      " exceeds n - 1");
  }
  const auto d = static_cast<std::size_t>(needed);
  const double keep = static_cast<double>(d) / static_cast<double>(n - 1);

  std::vector<char> adj(n * n, 0);
  std::vector<std::size_t> deg(n, 0);
  auto link = [&](std::size_t u, std::size_t v) {
    adj[u * n + v] = adj[v * n + u] = 1;
    ++deg[u];
    ++deg[v];
  };
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      if (rng.uniform01() < keep) link(u, v);
    }
  }

  std::vector<std::size_t> candidates;
  for (std::size_t v = 0; v < n; ++v) {
    if (deg[v] >= d) continue;
    candidates.clear();
    for (std::size_t w = 0; w < n; ++w) {
      if (w != v && !adj[v * n + w]) candidates.push_back(w);
    }
    std::shuffle(candidates.begin(), candidates.end(), rng);
    for (std::size_t i = 0; deg[v] < d; ++i) link(v, candidates[i]);
  }

  std::vector<Edge> edges;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      if (adj[u * n + v]) edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v)});
    }
  }
  return Graph(n, std::move(edges));
}

// ---------------------------------------------------------------------------

double riemann_zeta(double s) {
  if (!(s > 1.0)) throw DomainError("zeta(s) diverges for s <= 1 (got s = " + std::to_string(s) + ")");
  for (std::size_t cutoff = 64;; cutoff *= 2) {
    const double big_n = static_cast<double>(cutoff);
    // Remainder after the B6 correction is about the B8 term.
    const double rising7 = s * (s + 1) * (s + 2) * (s + 3) * (s + 4) * (s + 5) * (s + 6);
    const double remainder = rising7 / 1209600.0 * std::pow(big_n, -s - 7);
    if (remainder > 1e-12 && cutoff < (1u << 20)) continue;

    double head = 0.0;
    for (std::size_t k = cutoff - 1; k >= 1; --k) head += std::pow(static_cast<double>(k), -s);
    const double tail = std::pow(big_n, 1 - s) / (s - 1) + 0.5 * std::pow(big_n, -s) +
                        s / 12.0 * std::pow(big_n, -s - 1) -
                        s * (s + 1) * (s + 2) / 720.0 * std::pow(big_n, -s - 3) +
                        s * (s + 1) * (s + 2) * (s + 3) * (s + 4) / 30240.0 *
                            std::pow(big_n, -s - 5);
    return head + tail;
  }
}

PlgAsymptotics plg_asymptotics(const PlgSpec& spec) {
  spec.validate();
  const double a = spec.alpha;
  const double b = spec.beta;
  const double ea = std::exp(a);
  PlgAsymptotics out;
  if (b > 1.0) {
    out.n_pred = riemann_zeta(b) * ea;
  } else if (b == 1.0) {
    out.n_pred = a * ea;
  } else {
    out.n_pred = std::exp(a / b) / (1.0 - b);
  }
  if (b > 2.0) {
    out.m_pred = 0.5 * riemann_zeta(b - 1.0) * ea;
  } else if (b == 2.0) {
    out.m_pred = 0.25 * a * ea;
  } else {
    out.m_pred = 0.5 * std::exp(2.0 * a / b) / (2.0 - b);
  }
  return out;
}

double molloy_reed_q_finite(std::span<const std::uint64_t> degree_counts) {
  double n = 0.0;
  double weighted = 0.0;
  for (std::size_t i = 0; i < degree_counts.size(); ++i) {
    const double deg = static_cast<double>(i + 1);
    const auto c = static_cast<double>(degree_counts[i]);
    n += c;
    weighted += deg * (deg - 2.0) * c;
  }
  if (n == 0.0) throw DomainError("Molloy-Reed sum needs at least one vertex");
  return weighted / n;
}

double molloy_reed_q_closed(double beta) {
  if (!(beta > 3.0)) {
    throw DomainError("the zeta closed form needs beta > 3 (zeta(beta-2) diverges otherwise)");
  }
  return (riemann_zeta(beta - 2.0) - 2.0 * riemann_zeta(beta - 1.0)) / riemann_zeta(beta);
}

MolloyReedQ molloy_reed_q(const PlgSpec& spec) {
  MolloyReedQ out;
  out.finite = molloy_reed_q_finite(spec.degree_counts());
  if (spec.beta > 3.0) out.closed_form = molloy_reed_q_closed(spec.beta);
  return out;
}

nlohmann::json to_json(const PlgSpec& spec) {
  return {
      {"alpha", spec.alpha},
      {"beta", spec.beta},
      {"max_degree", spec.max_degree()},
      {"degree_counts", spec.degree_counts()},
      {"n", spec.num_vertices()},
      {"total_copies", spec.total_copies()},
  };
}

}  // namespace tuttemc
