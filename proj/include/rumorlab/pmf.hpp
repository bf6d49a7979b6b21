#pragma once

#include "rumorlab/probability.hpp"

#include <gmpxx.h>

#include <optional>
#include <vector>

namespace rumorlab {

/// Probability mass function on the contiguous support
/// {support_min, ..., support_min + size - 1}. Exact pmfs carry rationals that
/// sum to exactly one; floating pmfs sum to one within 1e-12.
class Pmf {
 public:
  static Pmf exact(int support_min, std::vector<mpq_class> probabilities);
  static Pmf floating(int support_min, std::vector<double> probabilities);
  static Pmf point_mass(int value);

  int support_min() const { return support_min_; }
  int support_max() const { return support_min_ + static_cast<int>(probs_.size()) - 1; }
  std::size_t size() const { return probs_.size(); }

  /// P(value); zero outside the support.
  double at(int value) const;
  const std::vector<double>& probabilities() const { return probs_; }

  bool is_exact() const { return exact_.has_value(); }
  const std::vector<mpq_class>& exact_probabilities() const;
  /// Exact P(value), zero outside the support. Requires is_exact().
  mpq_class exact_at(int value) const;

  double total() const;
  double mean() const;
  std::optional<mpq_class> exact_mean() const;

  /// Sum_i P(i) s^i.
  double pgf(double s) const;

  /// Same law with a smaller support_min (zero-padded on the left).
  Pmf extended_to(int new_support_min) const;

 private:
  Pmf() = default;
  int support_min_ = 0;
  std::vector<double> probs_;
  std::optional<std::vector<mpq_class>> exact_;
};

/// Total-variation distance, 0.5 * sum |P(i) - Q(i)| over the joint support.
double total_variation(const Pmf& a, const Pmf& b);

/// Law of sum_{l=1}^{K} I_l with K ~ law and I_l i.i.d. Bernoulli(p).
/// Exact when the input law is exact.
Pmf binomial_thinning(const Pmf& law, const Probability& p);

}  // namespace rumorlab
