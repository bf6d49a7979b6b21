#pragma once

// Galton-Watson process behind the rumor on T_d: Z_0 ~ N' counts the
// spreaders at distance one from the root, and Z_{n+1} = sum_{i<=Z_n} X'_i.
// The rumor survives exactly when this process does.

#include "rumorlab/pmf.hpp"
#include "rumorlab/probability.hpp"
#include "rumorlab/rng.hpp"
#include "rumorlab/stats.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace rumorlab {

inline constexpr int kDefaultHorizon = 60;
inline constexpr std::int64_t kDefaultPopulationCap = 10'000'000;

/// Inverse-CDF sampler over a Pmf.
class InverseCdf {
 public:
  explicit InverseCdf(const Pmf& law);
  int draw(double u) const;
  int draw(Stream& rng) const { return draw(rng.uniform()); }

 private:
  int support_min_ = 0;
  std::vector<double> cumulative_;
};

/// Draws X' two ways: straight from the law of X', or as a draw of X followed
/// by one Bernoulli(p) thinning uniform per contacted neighbour.
class OffspringSampler {
 public:
  OffspringSampler(int d, const Probability& p);

  int inverse_cdf(Stream& rng) const { return offspring_.draw(rng); }
  int thinned(Stream& rng) const;

  const Pmf& law() const { return law_; }

 private:
  double p_;
  Pmf law_;
  InverseCdf offspring_;
  InverseCdf contacts_;
};

struct GwSpec {
  Pmf initial_law;
  Pmf offspring_law;
  int max_generations = kDefaultHorizon;
  std::int64_t population_cap = kDefaultPopulationCap;
  void validate() const;
};

struct GwOutcome {
  bool survived_to_horizon = false;
  std::optional<int> extinction_generation;
  std::int64_t peak_population = 0;
  bool capped = false;  // population exceeded the cap; counted as survival

  bool operator==(const GwOutcome&) const = default;
};

GwOutcome simulate_gw(const GwSpec& spec, std::uint64_t seed);

/// Fraction of replicas alive at `horizon` (or past the cap), with a Wilson
/// interval. Replica r runs on substream derive_key(seed, r).
EstimateCI survival_mc(int d, const Probability& p, std::int64_t replicas,
                       int horizon = kDefaultHorizon,
                       std::int64_t cap = kDefaultPopulationCap, std::uint64_t seed = 0,
                       int threads = 0);

/// Extinction probability by s <- G(s) from s = 0. Laws with mean <= 1
/// (other than the point mass at 1) return 1. Throws NumericFault after
/// 10^6 iterations.
double extinction_by_iteration(const Pmf& offspring_law, double tolerance);

/// Generation sizes Z_0..Z_horizon of the thinned process with spread
/// probability p, built on the potential-contact tree keyed by `seed`. Every
/// individual owns a contact count X and a thinning uniform U that depend
/// only on its position, so any two values of p see the same uniforms.
/// Stops early once a generation exceeds `cap`.
std::vector<std::int64_t> coupled_generation_sizes(int d, double p, int horizon,
                                                   std::uint64_t seed,
                                                   std::int64_t cap = 1'000'000);

inline constexpr std::int64_t kDefaultCouplingCap = 10'000;

/// True iff Z_n(p1) <= Z_n(p2) for every generation both processes reached.
/// Each process stops once a generation exceeds `cap`.
bool coupled_monotonicity_trial(int d, double p1, double p2, int horizon, std::uint64_t seed,
                                std::int64_t cap = kDefaultCouplingCap);

}  // namespace rumorlab
