#include "tuttemc/exact.hpp"

#include <bit>
#include <string>
#include <utility>

namespace tuttemc {

namespace {

void guard_edges(const Graph& g, std::size_t limit, const char* what) {
  if (g.num_edges() > limit) {
    throw DomainError(std::string(what) + " enumerates all edge subsets and is limited to m <= " +
                      std::to_string(limit) + " edges (graph has " +
                      std::to_string(g.num_edges()) + ")");
  }
}

// Union-find without path compression so that unions can be undone in LIFO
// order during the subset recursion.
class RollbackSets {
 public:
  explicit RollbackSets(std::size_t n) : parent_(n), size_(n, 1), sets_(n) {
    for (std::size_t i = 0; i < n; ++i) parent_[i] = i;
  }

  std::size_t find(std::size_t x) const {
    while (parent_[x] != x) x = parent_[x];
    return x;
  }

  // Returns the absorbed root, or npos if nothing changed.
  std::size_t unite(std::size_t x, std::size_t y) {
    x = find(x);
    y = find(y);
    if (x == y) return npos;
    if (size_[x] < size_[y]) std::swap(x, y);
    parent_[y] = x;
    size_[x] += size_[y];
    --sets_;
    return y;
  }

  void undo(std::size_t absorbed) {
    const std::size_t root = parent_[absorbed];
    size_[root] -= size_[absorbed];
    parent_[absorbed] = absorbed;
    ++sets_;
  }

  std::size_t num_sets() const { return sets_; }

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
  std::size_t sets_;
};

void census_walk(std::span<const Edge> edges, std::size_t i, std::size_t chosen,
                 RollbackSets& sets, SubsetCensus& out) {
  if (i == edges.size()) {
    ++out.counts[chosen][sets.num_sets()];
    return;
  }
  census_walk(edges, i + 1, chosen, sets, out);
  const auto absorbed = sets.unite(edges[i].u, edges[i].v);
  census_walk(edges, i + 1, chosen + 1, sets, out);
  if (absorbed != RollbackSets::npos) sets.undo(absorbed);
}

std::size_t kappa_of_mask(const Graph& g, std::uint64_t mask) {
  DisjointSets sets(g.num_vertices());
  const auto edges = g.edges();
  while (mask != 0) {
    const auto i = static_cast<std::size_t>(std::countr_zero(mask));
    sets.unite(edges[i].u, edges[i].v);
    mask &= mask - 1;
  }
  return sets.num_sets();
}

template <class T>
T rc_weight(const RCConfig<T>& cfg, std::size_t m, std::size_t a,
            std::size_t kappa) {
  return ipow(cfg.p, a) * ipow(T(1 - cfg.p), m - a) * ipow(cfg.q_weight, kappa);
}

template <class T>
bool is_positive(const T& v) {
  return v > 0;
}

// Deletion-contraction on a scratch edge list. Contracted-away vertices stay
// behind as isolated vertices, which contribute a factor of 1.
template <class T>
T delcon_rec(std::size_t n, std::vector<Edge> edges, const T& x, const T& y) {
  T factor(1);
  // Loops: T(G) = y T(G - e).
  std::size_t loops = 0;
  std::erase_if(edges, [&](const Edge& e) {
    if (e.is_loop()) {
      ++loops;
      return true;
    }
    return false;
  });
  if (loops > 0) factor = ipow(y, loops);
  if (edges.empty()) return factor;

  const Edge e = edges.back();
  edges.pop_back();

  // e is a bridge iff its endpoints are disconnected in G - e.
  DisjointSets sets(n);
  for (const auto& f : edges) sets.unite(f.u, f.v);
  const bool bridge = sets.find(e.u) != sets.find(e.v);

  std::vector<Edge> contracted = edges;
  for (auto& f : contracted) {
    if (f.u == e.v) f.u = e.u;
    if (f.v == e.v) f.v = e.u;
  }
  if (bridge) {
    return factor * x * delcon_rec(n, std::move(contracted), x, y);
  }
  return factor * (delcon_rec(n, std::move(edges), x, y) +
                   delcon_rec(n, std::move(contracted), x, y));
}

}  // namespace

template <class T>
T EvalPoint<T>::scale_factor(const Graph& g) const {
  const T xm1 = x - 1;
  const T ym1 = y - 1;
  if (xm1 == 0 || ym1 == 0) {
    throw DomainError("zeta = y^m/((x-1)(y-1)^n) is undefined at x = 1 or y = 1");
  }
  const auto kappa = components(g).kappa;
  return ipow(y, g.num_edges()) / (ipow(xm1, kappa) * ipow(ym1, g.num_vertices()));
}

template <class T>
void RCConfig<T>::validate() const {
  if (p < 0 || p > 1) throw DomainError("edge probability p must lie in [0, 1]");
  if (!is_positive(q_weight)) throw DomainError("cluster weight Q must be > 0");
}

SubsetCensus subset_census(const Graph& g) {
  guard_edges(g, kStateSumMaxEdges, "the state sum");
  SubsetCensus out;
  out.n = g.num_vertices();
  out.m = g.num_edges();
  out.kappa_full = components(g).kappa;
  out.counts.assign(out.m + 1, std::vector<std::uint64_t>(out.n + 1, 0));
  RollbackSets sets(out.n);
  census_walk(g.edges(), 0, 0, sets, out);
  return out;
}

template <class T>
T tutte_statesum(const SubsetCensus& census, const T& x, const T& y) {
  // T = sum_A (x-1)^{r(E)-r(A)} (y-1)^{|A|-r(A)}, with r(A) = n - k(A).
  const T xm1 = x - 1;
  const T ym1 = y - 1;
  T total(0);
  for (std::size_t a = 0; a <= census.m; ++a) {
    for (std::size_t k = 0; k <= census.n; ++k) {
      const auto count = census.counts[a][k];
      if (count == 0) continue;
      const std::size_t rank = census.n - k;
      T term = ipow(xm1, k - census.kappa_full) * ipow(ym1, a - rank);
      total += term * T(static_cast<unsigned long>(count));
    }
  }
  return total;
}

template <class T>
T tutte_statesum(const Graph& g, const T& x, const T& y) {
  return tutte_statesum(subset_census(g), x, y);
}

template <class T>
T tutte_delcon(const Graph& g, const T& x, const T& y) {
  guard_edges(g, kDelConMaxEdges, "deletion-contraction");
  const auto edges = g.edges();
  return delcon_rec(g.num_vertices(), std::vector<Edge>(edges.begin(), edges.end()), x, y);
}

Rational chromatic_eval(const Graph& g, long lambda) {
  const auto census = subset_census(g);
  const Rational t = tutte_statesum(census, Rational(1 - lambda), Rational(0));
  const std::size_t rank_full = census.n - census.kappa_full;
  Rational sign = (rank_full % 2 == 0) ? Rational(1) : Rational(-1);
  return sign * ipow(Rational(lambda), census.kappa_full) * t;
}

template <class T>
T z_exact(const SubsetCensus& census, const RCConfig<T>& cfg) {
  cfg.validate();
  T total(0);
  for (std::size_t a = 0; a <= census.m; ++a) {
    for (std::size_t k = 0; k <= census.n; ++k) {
      const auto count = census.counts[a][k];
      if (count == 0) continue;
      total += rc_weight(cfg, census.m, a, k) * T(static_cast<unsigned long>(count));
    }
  }
  return total;
}

template <class T>
T z_exact(const Graph& g, const RCConfig<T>& cfg) {
  return z_exact(subset_census(g), cfg);
}

template <class T>
T mu_exact(const Graph& g, const RCConfig<T>& cfg, const EdgeSubset& a) {
  const T z = z_exact(g, cfg);
  const auto kappa = components(g, a).kappa;
  return rc_weight(cfg, g.num_edges(), a.count(), kappa) / z;
}

template <class T>
T lambda_exact(const Graph& g, const RCConfig<T>& cfg, const EdgeSubset& a) {
  const T z = z_exact(g, cfg);
  const std::size_t m = g.num_edges();
  const std::uint64_t base = a.mask();
  const std::uint64_t all = (m == 64) ? ~std::uint64_t{0} : ((std::uint64_t{1} << m) - 1);
  const std::uint64_t free = all & ~base;
  T total(0);
  // Enumerate every sub-mask of `free`, including 0.
  std::uint64_t sub = free;
  while (true) {
    const std::uint64_t x = base | sub;
    total += rc_weight(cfg, m, static_cast<std::size_t>(std::popcount(x)), kappa_of_mask(g, x));
    if (sub == 0) break;
    sub = (sub - 1) & free;
  }
  return total / z;
}

template <class T>
T lambda_by_contraction(const Graph& g, const RCConfig<T>& cfg, const EdgeSubset& a) {
  const T z = z_exact(g, cfg);
  const T z_contracted = z_exact(contract(g, a), cfg);
  return ipow(cfg.p, a.count()) * z_contracted / z;
}

#define TUTTEMC_INSTANTIATE(T)                                                         \
  template struct EvalPoint<T>;                                                        \
  template struct RCConfig<T>;                                                         \
  template T tutte_statesum<T>(const Graph&, const T&, const T&);                      \
  template T tutte_statesum<T>(const SubsetCensus&, const T&, const T&);               \
  template T tutte_delcon<T>(const Graph&, const T&, const T&);                        \
  template T z_exact<T>(const Graph&, const RCConfig<T>&);                             \
  template T z_exact<T>(const SubsetCensus&, const RCConfig<T>&);                      \
  template T mu_exact<T>(const Graph&, const RCConfig<T>&, const EdgeSubset&);         \
  template T lambda_exact<T>(const Graph&, const RCConfig<T>&, const EdgeSubset&);     \
  template T lambda_by_contraction<T>(const Graph&, const RCConfig<T>&, const EdgeSubset&);

TUTTEMC_INSTANTIATE(Rational)
TUTTEMC_INSTANTIATE(double)

#undef TUTTEMC_INSTANTIATE

}  // namespace tuttemc
