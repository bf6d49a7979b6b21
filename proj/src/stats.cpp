#include "rumorlab/stats.hpp"

#include "rumorlab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace rumorlab {

double EstimateCI::standard_error() const {
  if (replicas <= 0) return std::numeric_limits<double>::infinity();
  return std::sqrt(estimate * (1.0 - estimate) / static_cast<double>(replicas));
}

EstimateCI wilson_interval(std::int64_t successes, std::int64_t trials, std::uint64_t seed, double z) {
  if (trials < 1) throw DomainError("Wilson interval needs at least one trial");
  if (successes < 0 || successes > trials) throw DomainError("successes out of range");
  const double n = static_cast<double>(trials);
  const double phat = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double centre = (phat + z2 / (2.0 * n)) / (1.0 + z2 / n);
  const double half = z / (1.0 + z2 / n) * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n));
  EstimateCI out;
  out.estimate = phat;
  out.ci_low = std::clamp(std::min(centre - half, phat), 0.0, 1.0);
  out.ci_high = std::clamp(std::max(centre + half, phat), 0.0, 1.0);
  out.replicas = trials;
  out.successes = successes;
  out.seed = seed;
  return out;
}

double separation_in_se(double a, double se_a, double b, double se_b) {
  const double combined = std::sqrt(se_a * se_a + se_b * se_b);
  if (combined == 0.0) return a == b ? 0.0 : std::numeric_limits<double>::infinity();
  return std::fabs(a - b) / combined;
}

}  // namespace rumorlab
