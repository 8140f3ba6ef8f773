#pragma once

// Exhaustive ground truth for the Tutte polynomial and the random-cluster
// model on small graphs. Every routine is instantiated for Rational (exact)
// and double.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "tuttemc/errors.hpp"
#include "tuttemc/graph.hpp"
#include "tuttemc/rational.hpp"

namespace tuttemc {

inline constexpr std::size_t kStateSumMaxEdges = 30;
inline constexpr std::size_t kDelConMaxEdges = 20;

/// A point (x, y) of the Tutte plane together with the random-cluster
/// parameters it induces.
template <class T>
struct EvalPoint {
  T x;
  T y;

  /// Q = (x-1)(y-1)
  T cluster_weight() const { return (x - 1) * (y - 1); }
  /// p = (y-1)/y
  T edge_probability() const { return (y - 1) / y; }
  /// zeta = y^m / ((x-1)^k(G) (y-1)^n). For connected G, k(G) = 1.
  T scale_factor(const Graph& g) const;
};

/// Uniform edge probability p and cluster weight Q, independent of any (x, y).
template <class T>
struct RCConfig {
  T p;
  T q_weight;

  void validate() const;
};

/// counts[a][k] = number of edge subsets A with |A| = a and k(A) = k.
/// Every state sum in this header is a polynomial in these counts.
struct SubsetCensus {
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t kappa_full = 0;
  std::vector<std::vector<std::uint64_t>> counts;
};

SubsetCensus subset_census(const Graph& g);

template <class T>
T tutte_statesum(const Graph& g, const T& x, const T& y);
template <class T>
T tutte_statesum(const SubsetCensus& census, const T& x, const T& y);

/// Deletion-contraction with loop and bridge base cases.
template <class T>
T tutte_delcon(const Graph& g, const T& x, const T& y);

/// P(G, lambda) = (-1)^{r(E)} lambda^{k(G)} T_G(1 - lambda, 0).
Rational chromatic_eval(const Graph& g, long lambda);

template <class T>
T z_exact(const Graph& g, const RCConfig<T>& cfg);
template <class T>
T z_exact(const SubsetCensus& census, const RCConfig<T>& cfg);

/// mu(A) = p^|A| (1-p)^{m-|A|} Q^{k(A)} / Z
template <class T>
T mu_exact(const Graph& g, const RCConfig<T>& cfg, const EdgeSubset& a);

/// lambda(A) = sum of mu(X) over X containing A.
template <class T>
T lambda_exact(const Graph& g, const RCConfig<T>& cfg, const EdgeSubset& a);

/// lambda(A) = p^|A| Z_{G/A} / Z_G.
template <class T>
T lambda_by_contraction(const Graph& g, const RCConfig<T>& cfg,
                        const EdgeSubset& a);

}  // namespace tuttemc
