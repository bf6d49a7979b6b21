#pragma once

#include <cstdint>
#include <string>

namespace rumorlab {

inline constexpr double kZ95 = 1.959963984540054;

/// Monte Carlo proportion with a 95% Wilson score interval.
struct EstimateCI {
  double estimate = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::int64_t replicas = 0;
  std::int64_t successes = 0;
  std::uint64_t seed = 0;
  std::string method = "wilson";

  /// sqrt(phat (1 - phat) / n).
  double standard_error() const;
  bool covers(double value) const { return ci_low <= value && value <= ci_high; }
};

EstimateCI wilson_interval(std::int64_t successes, std::int64_t trials, std::uint64_t seed,
                           double z = kZ95);

/// |a - b| measured in combined standard errors sqrt(se_a^2 + se_b^2).
double separation_in_se(double a, double se_a, double b, double se_b = 0.0);

}  // namespace rumorlab
