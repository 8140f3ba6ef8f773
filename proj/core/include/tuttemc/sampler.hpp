#pragma once

// Monte Carlo estimation of E(Q^k(G_p)), the Tutte polynomial off the
// hyperbola Q = 1, the random-cluster partition function and its
// distribution function lambda(A).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "tuttemc/exact.hpp"
#include "tuttemc/graph.hpp"
#include "tuttemc/rng.hpp"

namespace tuttemc {

/// Sample counts beyond this are refused rather than silently run.
inline constexpr std::uint64_t kMaxSampleCount = 10'000'000'000ULL;

struct SamplerConfig {
  double epsilon = 0.1;
  /// Explicit sample count; takes precedence over any variance bound.
  std::optional<std::uint64_t> t_override;
  /// Bound B on the relative second moment, giving t = ceil(2B / eps^2).
  std::optional<double> variance_bound;
  /// Subdensity constant c for the default bound; the graph's own
  /// min-degree sqrt(ln n)/n when unset.
  std::optional<double> density_c;
  /// Family whose guarantee the caller relies on; a warning is recorded when
  /// the graph is not in it.
  std::optional<DensityFamily> guarantee;
  std::uint64_t seed = 0;
  /// Odd number of independent runs combined by their median (1 = single run).
  unsigned repetitions = 1;
  unsigned threads = 1;

  void validate() const;
};

enum class EstimatorMode { QKappaMean, Tutte, PartitionFunction };

std::string to_string(EstimatorMode mode);

struct EstimatorRun {
  EstimatorMode mode = EstimatorMode::QKappaMean;
  std::uint64_t t = 0;
  unsigned repetitions = 1;
  double epsilon = 0.0;
  std::uint64_t seed = 0;
  double p = 0.0;
  double q_weight = 0.0;
  /// Sample mean of Q^k. May be +inf when it overflows; log_mean stays finite.
  double mean = 0.0;
  double log_mean = 0.0;
  /// Sum of squared deviations from the mean.
  double m2 = 0.0;
  double estimate = 0.0;
  double log_estimate = 0.0;
  /// kappa_counts[k] = samples with exactly k components (median run).
  std::vector<std::uint64_t> kappa_counts;
  std::vector<std::string> warnings;

  double variance() const { return t > 1 ? m2 / static_cast<double>(t - 1) : 0.0; }
  double standard_error() const;
};

nlohmann::json to_json(const EstimatorRun& run);

/// One draw of G_p: every edge kept independently with probability p,
/// consuming exactly one uniform per edge in edge order.
EdgeSubset sample_gp(const Graph& g, double p, SplitMix64& rng);

/// ceil(2 B / eps^2); throws when the result is 0 or beyond kMaxSampleCount.
std::uint64_t chebyshev_sample_count(double variance_bound, double epsilon);

/// s = ceil(5/(2c) sqrt(ln n)), the component bound of the auxiliary
/// common-neighbourhood graph.
unsigned component_bound(std::size_t n, double c);

/// 2 Q^{2s}, or nullopt when no bound applies (Q < 1, n < 2, an isolated
/// vertex, or a graph that fails the requested subdensity).
std::optional<double> default_variance_bound(const Graph& g, double q_weight,
                                             std::optional<double> density_c);

/// Resolves t from the config: t_override, then variance_bound, then the
/// default bound.
std::uint64_t resolve_sample_count(const Graph& g, double q_weight,
                                   const SamplerConfig& cfg);

EstimatorRun estimate_q_kappa_mean(const Graph& g, double p, double q_weight,
                                   const SamplerConfig& cfg);

/// Requires x > 1 and y > 1; estimate = zeta * mean.
EstimatorRun estimate_tutte(const Graph& g, double x, double y,
                            const SamplerConfig& cfg);

EstimatorRun estimate_z(const Graph& g, const RCConfig<double>& rc,
                        const SamplerConfig& cfg);

struct LambdaEstimate {
  double value = 0.0;
  double log_value = 0.0;
  /// Per-run relative error target, (1 + sub_epsilon)^2 = 1 + epsilon.
  double sub_epsilon = 0.0;
  EstimatorRun contracted;  // Z_{G/A}
  EstimatorRun full;        // Z_G
};

LambdaEstimate estimate_lambda(const Graph& g, const RCConfig<double>& rc,
                               const EdgeSubset& a, const SamplerConfig& cfg);

nlohmann::json to_json(const LambdaEstimate& est);

}  // namespace tuttemc
