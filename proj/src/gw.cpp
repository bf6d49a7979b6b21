#include "rumorlab/gw.hpp"

#include "rumorlab/errors.hpp"
#include "rumorlab/laws.hpp"
#include "rumorlab/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace rumorlab {

InverseCdf::InverseCdf(const Pmf& law) : support_min_(law.support_min()) {
  cumulative_.reserve(law.size());
  double acc = 0.0;
  for (double v : law.probabilities()) {
    acc += v;
    cumulative_.push_back(acc);
  }
  cumulative_.back() = 1.0;
}

int InverseCdf::draw(double u) const {
  const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  const auto index = std::min<std::ptrdiff_t>(it - cumulative_.begin(),
                                              static_cast<std::ptrdiff_t>(cumulative_.size()) - 1);
  return support_min_ + static_cast<int>(index);
}

OffspringSampler::OffspringSampler(int d, const Probability& p)
    : p_(p.value()), law_(law_X_prime(d, p)), offspring_(law_), contacts_(law_X(d)) {}

int OffspringSampler::thinned(Stream& rng) const {
  const int contacted = contacts_.draw(rng);
  int spreaders = 0;
  for (int l = 0; l < contacted; ++l) {
    if (rng.uniform() < p_) ++spreaders;
  }
  return spreaders;
}

void GwSpec::validate() const {
  if (max_generations < 1) throw DomainError("max_generations must be >= 1");
  if (population_cap < 1) throw DomainError("population_cap must be >= 1");
  if (initial_law.support_min() < 0 || offspring_law.support_min() < 0) {
    throw DomainError("GW laws must live on non-negative integers");
  }
}

namespace {

// Total offspring of `parents` i.i.d. individuals. Small generations draw one
// by one; large ones draw the multinomial category counts by conditional
// binomials.
std::int64_t total_offspring(std::int64_t parents, const InverseCdf& sampler, const Pmf& law,
                             Stream& rng) {
  constexpr std::int64_t kDirectLimit = 32;
  if (parents <= kDirectLimit) {
    std::int64_t total = 0;
    for (std::int64_t i = 0; i < parents; ++i) total += sampler.draw(rng);
    return total;
  }
  std::int64_t remaining = parents;
  double remaining_mass = 1.0;
  std::int64_t total = 0;
  const auto& probs = law.probabilities();
  for (std::size_t j = 0; j < probs.size() && remaining > 0; ++j) {
    const int value = law.support_min() + static_cast<int>(j);
    std::int64_t count = 0;
    if (j + 1 == probs.size() || remaining_mass <= probs[j]) {
      count = remaining;
    } else if (probs[j] > 0.0) {
      const double q = std::clamp(probs[j] / remaining_mass, 0.0, 1.0);
      std::binomial_distribution<std::int64_t> binomial(remaining, q);
      count = binomial(rng);
    }
    total += count * value;
    remaining -= count;
    remaining_mass -= probs[j];
  }
  return total;
}

}  // namespace

GwOutcome simulate_gw(const GwSpec& spec, std::uint64_t seed) {
  spec.validate();
  Stream rng(seed);
  const InverseCdf initial(spec.initial_law);
  const InverseCdf offspring(spec.offspring_law);
  GwOutcome outcome;
  std::int64_t population = initial.draw(rng);
  for (int generation = 0;; ++generation) {
    outcome.peak_population = std::max(outcome.peak_population, population);
    if (population == 0) {
      outcome.extinction_generation = generation;
      return outcome;
    }
    if (population > spec.population_cap) {
      outcome.capped = true;
      outcome.survived_to_horizon = true;
      return outcome;
    }
    if (generation == spec.max_generations) {
      outcome.survived_to_horizon = true;
      return outcome;
    }
    population = total_offspring(population, offspring, spec.offspring_law, rng);
  }
}

EstimateCI survival_mc(int d, const Probability& p, std::int64_t replicas, int horizon,
                       std::int64_t cap, std::uint64_t seed, int threads) {
  if (replicas < 1) throw DomainError("replicas must be >= 1");
  const GwSpec spec{law_N_prime(d, p), law_X_prime(d, p), horizon, cap};
  spec.validate();
  const std::int64_t survived = parallel_replicas(
      replicas, threads, std::int64_t{0},
      [&](std::int64_t& count, std::int64_t r) {
        if (simulate_gw(spec, derive_key(seed, static_cast<std::uint64_t>(r))).survived_to_horizon) ++count;
      },
      [](std::int64_t& into, const std::int64_t& from) { into += from; });
  return wilson_interval(survived, replicas, seed);
}

double extinction_by_iteration(const Pmf& offspring_law, double tolerance) {
  if (!(tolerance > 0.0)) throw DomainError("tolerance must be positive");
  if (offspring_law.support_min() < 0) throw DomainError("offspring law must be non-negative");
  if (offspring_law.at(1) == 1.0) return 0.0;
  const bool at_most_critical = offspring_law.is_exact() ? *offspring_law.exact_mean() <= 1
                                                         : offspring_law.mean() <= 1.0;
  if (at_most_critical) return 1.0;

  constexpr int kIterationCap = 1'000'000;
  double s = 0.0;
  double previous_step = 0.0;
  for (int n = 0; n < kIterationCap; ++n) {
    const double next = offspring_law.pgf(s);
    const double step = next - s;
    s = next;
    if (step <= 0.0) return s;
    // Remaining error of a contraction with rate r is about step * r / (1 - r).
    if (previous_step > 0.0) {
      const double rate = step / previous_step;
      if (rate < 1.0 && step * rate / (1.0 - rate) < tolerance) return s;
    }
    previous_step = step;
  }
  throw NumericFault("extinction iteration exceeded 10^6 steps");
}

namespace {

constexpr std::uint64_t kContactSalt = 0x436f6e7461637473ULL;
constexpr std::uint64_t kThinSalt = 0x5468696e6e696e67ULL;
constexpr std::uint64_t kRootSalt = 0x526f6f7400000000ULL;

}  // namespace

std::vector<std::int64_t> coupled_generation_sizes(int d, double p, int horizon, std::uint64_t seed,
                                                   std::int64_t cap) {
  if (!(p > 0.0 && p <= 1.0)) throw DomainError("p must lie in (0, 1]");
  if (horizon < 0) throw DomainError("horizon must be >= 0");
  const InverseCdf root_contacts(law_N(d));
  const InverseCdf contacts(law_X(d));

  const std::uint64_t root = derive_key(seed, kRootSalt);
  std::vector<std::uint64_t> generation;
  const int first = root_contacts.draw(keyed_uniform(derive_key(root, kContactSalt)));
  for (int j = 0; j < first; ++j) {
    const std::uint64_t child = derive_key(root, static_cast<std::uint64_t>(j));
    if (keyed_uniform(derive_key(child, kThinSalt)) < p) generation.push_back(child);
  }

  std::vector<std::int64_t> sizes;
  std::vector<std::uint64_t> next;
  for (int n = 0; n <= horizon; ++n) {
    sizes.push_back(static_cast<std::int64_t>(generation.size()));
    if (generation.empty() || static_cast<std::int64_t>(generation.size()) > cap || n == horizon) break;
    next.clear();
    for (std::uint64_t parent : generation) {
      const int contacted = contacts.draw(keyed_uniform(derive_key(parent, kContactSalt)));
      for (int j = 0; j < contacted; ++j) {
        const std::uint64_t child = derive_key(parent, static_cast<std::uint64_t>(j));
        if (keyed_uniform(derive_key(child, kThinSalt)) < p) next.push_back(child);
      }
    }
    generation.swap(next);
  }
  return sizes;
}

bool coupled_monotonicity_trial(int d, double p1, double p2, int horizon, std::uint64_t seed,
                                std::int64_t cap) {
  if (!(p1 > 0.0 && p1 <= p2 && p2 <= 1.0)) throw DomainError("need 0 < p1 <= p2 <= 1");
  const auto lower = coupled_generation_sizes(d, p1, horizon, seed, cap);
  const auto upper = coupled_generation_sizes(d, p2, horizon, seed, cap);
  const std::size_t common = std::min(lower.size(), upper.size());
  for (std::size_t n = 0; n < common; ++n) {
    if (lower[n] > upper[n]) return false;
  }
  // A dominated process may not outlive the dominating one.
  if (lower.size() > upper.size() && upper.back() == 0) return false;
  return true;
}

}  // namespace rumorlab
