#include "tuttemc/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <thread>

#include "tuttemc/errors.hpp"

namespace tuttemc {

namespace {

constexpr double kLogOverflowGuard = 700.0;

// Neumaier's variant of Kahan summation.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

struct Moments {
  double mean = 0.0;
  double log_mean = 0.0;
  double m2 = 0.0;
};

// Mean and squared deviations of Q^k from the component histogram. Falls
// back to a shifted log scale when Q^k leaves the double range.
Moments moments_from_counts(std::span<const std::uint64_t> counts,
                            std::uint64_t t, double q) {
  const double log_q = std::log(q);
  double max_exponent = 0.0;
  double shift = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < counts.size(); ++k) {
    if (counts[k] == 0) continue;
    const double e = static_cast<double>(k) * log_q;
    max_exponent = std::max(max_exponent, std::abs(e));
    shift = std::max(shift, e);
  }
  const double td = static_cast<double>(t);
  Moments out;
  if (max_exponent < kLogOverflowGuard) {
    CompensatedSum sum;
    for (std::size_t k = 0; k < counts.size(); ++k) {
      if (counts[k] != 0) {
        sum.add(static_cast<double>(counts[k]) * std::pow(q, static_cast<double>(k)));
      }
    }
    out.mean = sum.value() / td;
    out.log_mean = std::log(out.mean);
    CompensatedSum dev;
    for (std::size_t k = 0; k < counts.size(); ++k) {
      if (counts[k] == 0) continue;
      const double d = std::pow(q, static_cast<double>(k)) - out.mean;
      dev.add(static_cast<double>(counts[k]) * d * d);
    }
    out.m2 = dev.value();
    return out;
  }
  CompensatedSum sum;
  for (std::size_t k = 0; k < counts.size(); ++k) {
    if (counts[k] != 0) {
      sum.add(static_cast<double>(counts[k]) *
              std::exp(static_cast<double>(k) * log_q - shift));
    }
  }
  const double scaled_mean = sum.value() / td;
  out.log_mean = shift + std::log(scaled_mean);
  out.mean = std::exp(out.log_mean);
  CompensatedSum dev;
  for (std::size_t k = 0; k < counts.size(); ++k) {
    if (counts[k] == 0) continue;
    const double d = std::exp(static_cast<double>(k) * log_q - shift) - scaled_mean;
    dev.add(static_cast<double>(counts[k]) * d * d);
  }
  out.m2 = dev.value() * std::exp(2.0 * shift);
  return out;
}

// Components of one G_p draw. Stops early once everything is connected,
// which cannot change the count.
std::size_t sample_kappa(const Graph& g, double p, std::uint64_t stream_seed,
                         DisjointSets& sets) {
  SplitMix64 rng(stream_seed);
  sets.reset(g.num_vertices());
  for (const auto& e : g.edges()) {
    if (rng.bernoulli(p) && sets.unite(e.u, e.v) && sets.num_sets() == 1) break;
  }
  return sets.num_sets();
}

std::vector<std::uint64_t> kappa_histogram(const Graph& g, double p,
                                           std::uint64_t seed,
                                           std::uint64_t first_index,
                                           std::uint64_t t, unsigned threads) {
  const std::size_t bins = g.num_vertices() + 1;
  const auto workers = static_cast<unsigned>(
      std::max<std::uint64_t>(1, std::min<std::uint64_t>(std::max(threads, 1u), t)));
  std::vector<std::vector<std::uint64_t>> partial(workers, std::vector<std::uint64_t>(bins, 0));

  auto work = [&](unsigned w) {
    const std::uint64_t lo = t * w / workers;
    const std::uint64_t hi = t * (w + 1) / workers;
    DisjointSets sets(g.num_vertices());
    auto& hist = partial[w];
    for (std::uint64_t i = lo; i < hi; ++i) {
      ++hist[sample_kappa(g, p, derive_seed(seed, first_index + i), sets)];
    }
  };

  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
  }

  std::vector<std::uint64_t> total(bins, 0);
  for (const auto& h : partial) {
    for (std::size_t k = 0; k < bins; ++k) total[k] += h[k];
  }
  return total;
}

double checked_log(double v) { return v > 0 ? std::log(v) : -std::numeric_limits<double>::infinity(); }

}  // namespace

void SamplerConfig::validate() const {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw DomainError("epsilon must be a positive finite number");
  }
  if (repetitions == 0 || repetitions % 2 == 0) {
    throw DomainError("repetitions must be odd (median of an odd number of runs)");
  }
  if (variance_bound && !(*variance_bound >= 0.0)) {
    throw DomainError("variance bound must be non-negative");
  }
  if (density_c && !(*density_c > 0.0)) {
    throw DomainError("density constant c must be positive");
  }
}

std::string to_string(EstimatorMode mode) {
  switch (mode) {
    case EstimatorMode::QKappaMean:
      return "q_kappa_mean";
    case EstimatorMode::Tutte:
      return "tutte";
    case EstimatorMode::PartitionFunction:
      return "partition_function";
  }
  return "unknown";
}

double EstimatorRun::standard_error() const {
  return t > 0 ? std::sqrt(variance() / static_cast<double>(t)) : 0.0;
}

nlohmann::json to_json(const EstimatorRun& run) {
  nlohmann::json counts = nlohmann::json::object();
  for (std::size_t k = 0; k < run.kappa_counts.size(); ++k) {
    if (run.kappa_counts[k] != 0) counts[std::to_string(k)] = run.kappa_counts[k];
  }
  return {
      {"mode", to_string(run.mode)},
      {"estimate", run.estimate},
      {"log_estimate", run.log_estimate},
      {"mean", run.mean},
      {"log_mean", run.log_mean},
      {"variance", run.variance()},
      {"standard_error", run.standard_error()},
      {"t", run.t},
      {"repetitions", run.repetitions},
      {"seed", run.seed},
      {"epsilon", run.epsilon},
      {"p", run.p},
      {"Q", run.q_weight},
      {"kappa_counts", counts},
      {"warnings", run.warnings},
  };
}

EdgeSubset sample_gp(const Graph& g, double p, SplitMix64& rng) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("edge probability p must lie in [0, 1]");
  EdgeSubset a(g.num_edges());
  for (std::size_t i = 0; i < g.num_edges(); ++i) {
    if (rng.bernoulli(p)) a.insert(i);
  }
  return a;
}

std::uint64_t chebyshev_sample_count(double variance_bound, double epsilon) {
  if (!(epsilon > 0.0)) throw DomainError("epsilon must be positive");
  const double t = std::ceil(2.0 * variance_bound / (epsilon * epsilon));
  if (!(t >= 1.0)) throw DomainError("sample count t computed as 0; the variance bound must be positive");
  if (!(t <= static_cast<double>(kMaxSampleCount))) {
    throw DomainError("sample count t = ceil(2B/eps^2) exceeds " +
                      std::to_string(kMaxSampleCount) +
                      "; pass an explicit sample count or a tighter variance bound");
  }
  return static_cast<std::uint64_t>(t);
}

unsigned component_bound(std::size_t n, double c) {
  if (n < 2) throw DomainError("component bound needs n >= 2");
  if (!(c > 0.0)) throw DomainError("component bound needs c > 0");
  const double s = std::ceil(5.0 / (2.0 * c) * std::sqrt(std::log(static_cast<double>(n))));
  return static_cast<unsigned>(std::min(s, 1e9));
}

std::optional<double> default_variance_bound(const Graph& g, double q_weight,
                                             std::optional<double> density_c) {
  const std::size_t n = g.num_vertices();
  if (!(q_weight >= 1.0) || n < 2 || min_degree(g) == 0) return std::nullopt;
  double c = 0.0;
  if (density_c) {
    if (!classify_density(g, Subdense{*density_c})) return std::nullopt;
    c = *density_c;
  } else {
    c = subdensity_constant(g);
  }
  const unsigned s = component_bound(n, c);
  return 2.0 * std::pow(q_weight, 2.0 * s);
}

std::uint64_t resolve_sample_count(const Graph& g, double q_weight,
                                   const SamplerConfig& cfg) {
  if (cfg.t_override) {
    if (*cfg.t_override == 0) throw DomainError("sample count t must be at least 1");
    if (*cfg.t_override > kMaxSampleCount) {
      throw DomainError("sample count exceeds " + std::to_string(kMaxSampleCount));
    }
    return *cfg.t_override;
  }
  if (cfg.variance_bound) return chebyshev_sample_count(*cfg.variance_bound, cfg.epsilon);
  const auto bound = default_variance_bound(g, q_weight, cfg.density_c);
  if (!bound) {
    throw DomainError(
        "no second-moment bound applies (needs Q >= 1, n >= 2, no isolated vertex and "
        "the requested subdensity); pass an explicit sample count t or a variance bound");
  }
  return chebyshev_sample_count(*bound, cfg.epsilon);
}

EstimatorRun estimate_q_kappa_mean(const Graph& g, double p, double q_weight,
                                   const SamplerConfig& cfg) {
  cfg.validate();
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("edge probability p must lie in [0, 1]");
  if (!(q_weight > 0.0) || !std::isfinite(q_weight)) {
    throw DomainError("cluster weight Q must be positive and finite");
  }
  const std::uint64_t t = resolve_sample_count(g, q_weight, cfg);

  EstimatorRun run;
  run.t = t;
  run.repetitions = cfg.repetitions;
  run.epsilon = cfg.epsilon;
  run.seed = cfg.seed;
  run.p = p;
  run.q_weight = q_weight;
  if (q_weight < 1.0) {
    run.warnings.push_back("Q < 1: the estimate is unbiased but the variance guarantee covers Q >= 1 only");
  }

  struct Rep {
    Moments moments;
    std::vector<std::uint64_t> counts;
  };
  std::vector<Rep> reps;
  reps.reserve(cfg.repetitions);
  for (unsigned r = 0; r < cfg.repetitions; ++r) {
    auto counts = kappa_histogram(g, p, cfg.seed, static_cast<std::uint64_t>(r) * t, t, cfg.threads);
    auto moments = moments_from_counts(counts, t, q_weight);
    reps.push_back({moments, std::move(counts)});
  }
  std::vector<std::size_t> order(reps.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return reps[a].moments.log_mean < reps[b].moments.log_mean;
  });
  auto& median = reps[order[order.size() / 2]];

  run.mean = median.moments.mean;
  run.log_mean = median.moments.log_mean;
  run.m2 = median.moments.m2;
  run.kappa_counts = std::move(median.counts);
  run.estimate = run.mean;
  run.log_estimate = run.log_mean;
  return run;
}

EstimatorRun estimate_tutte(const Graph& g, double x, double y,
                            const SamplerConfig& cfg) {
  if (!(x > 1.0) || !(y > 1.0) || !std::isfinite(x) || !std::isfinite(y)) {
    throw DomainError(
        "the sampler needs x > 1 and y > 1 (so p = (y-1)/y lies in (0,1) and Q > 0); "
        "use the exact oracle for other points");
  }
  std::vector<std::string> warnings;
  if (cfg.guarantee) {
    const bool in_family =
        g.num_vertices() >= 2 && classify_density(g, *cfg.guarantee);
    if (!in_family) {
      warnings.push_back("graph is not " + to_string(*cfg.guarantee) +
                         "; the mean is unbiased but the variance guarantee does not apply");
    }
  }

  const double p = (y - 1.0) / y;
  const double q = (x - 1.0) * (y - 1.0);
  auto run = estimate_q_kappa_mean(g, p, q, cfg);
  run.mode = EstimatorMode::Tutte;
  run.warnings.insert(run.warnings.begin(), warnings.begin(), warnings.end());

  const auto n = static_cast<double>(g.num_vertices());
  const auto m = static_cast<double>(g.num_edges());
  const auto kappa = static_cast<double>(components(g).kappa);
  const double zeta = std::pow(y, m) / (std::pow(x - 1.0, kappa) * std::pow(y - 1.0, n));
  const double log_zeta = m * std::log(y) - kappa * std::log(x - 1.0) - n * std::log(y - 1.0);
  run.log_estimate = log_zeta + run.log_mean;
  const double direct = zeta * run.mean;
  if (std::isfinite(zeta) && zeta > 0.0 && std::isfinite(direct) && direct > 0.0) {
    run.estimate = direct;
  } else {
    run.estimate = std::exp(run.log_estimate);
  }
  return run;
}

EstimatorRun estimate_z(const Graph& g, const RCConfig<double>& rc,
                        const SamplerConfig& cfg) {
  rc.validate();
  auto run = estimate_q_kappa_mean(g, rc.p, rc.q_weight, cfg);
  run.mode = EstimatorMode::PartitionFunction;
  return run;
}

LambdaEstimate estimate_lambda(const Graph& g, const RCConfig<double>& rc,
                               const EdgeSubset& a, const SamplerConfig& cfg) {
  cfg.validate();
  rc.validate();
  const Graph contracted = contract(g, a);

  LambdaEstimate out;
  out.sub_epsilon = std::sqrt(1.0 + cfg.epsilon) - 1.0;
  SamplerConfig sub = cfg;
  sub.epsilon = out.sub_epsilon;
  sub.seed = derive_seed(cfg.seed, 1);
  out.contracted = estimate_z(contracted, rc, sub);
  sub.seed = derive_seed(cfg.seed, 2);
  out.full = estimate_z(g, rc, sub);

  if (!(out.full.estimate > 0.0)) {
    throw DomainError("partition function estimate of G is not positive; cannot form the ratio");
  }
  const auto size = static_cast<double>(a.count());
  out.log_value = size * checked_log(rc.p) + out.contracted.log_estimate - out.full.log_estimate;
  const double direct = std::pow(rc.p, size) * out.contracted.estimate / out.full.estimate;
  out.value = std::isfinite(direct) && std::isfinite(out.contracted.estimate)
                  ? direct
                  : std::exp(out.log_value);
  return out;
}

nlohmann::json to_json(const LambdaEstimate& est) {
  return {
      {"mode", "lambda"},
      {"estimate", est.value},
      {"log_estimate", est.log_value},
      {"sub_epsilon", est.sub_epsilon},
      {"contracted", to_json(est.contracted)},
      {"full", to_json(est.full)},
  };
}

}  // namespace tuttemc
