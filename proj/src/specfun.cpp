#include "rumorlab/specfun.hpp"

#include "rumorlab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

namespace rumorlab {

void GammaArgs::validate() const {
  if (m < 1) throw DomainError("incomplete gamma: m must be >= 1, got " + std::to_string(m));
  if (n < 0) throw DomainError("incomplete gamma: n must be >= 0, got " + std::to_string(n));
}

mpz_class scaled_incomplete_gamma_integer(long m, long n) {
  GammaArgs{m, n}.validate();
  // Horner in n over the coefficients (m-1)!/i!, highest power first; every
  // step is a bignum-by-word multiply.
  mpz_class total = 0;
  mpz_class coefficient = 1;
  for (long i = m - 1; i >= 0; --i) {
    total *= static_cast<unsigned long>(n);
    total += coefficient;
    if (i > 0) coefficient *= static_cast<unsigned long>(i);
  }
  return total;
}

ExactScalar partial_exp_sum(long m, long n) {
  GammaArgs{m, n}.validate();
  mpz_class factorial;
  mpz_fac_ui(factorial.get_mpz_t(), static_cast<unsigned long>(m - 1));
  return ExactScalar(mpq_class(scaled_incomplete_gamma_integer(m, n), factorial));
}

double log_scaled_incomplete_gamma(long m, double x) {
  if (m < 1) throw DomainError("incomplete gamma: m must be >= 1");
  if (!(x >= 0.0)) throw DomainError("incomplete gamma: x must be >= 0");
  if (x == 0.0) return std::lgamma(static_cast<double>(m));
  std::vector<double> terms(static_cast<std::size_t>(m));
  const double log_x = std::log(x);
  const double log_head = std::lgamma(static_cast<double>(m));
  for (long i = 0; i < m; ++i) {
    terms[static_cast<std::size_t>(i)] =
        log_head - std::lgamma(static_cast<double>(i) + 1.0) + static_cast<double>(i) * log_x;
  }
  const double peak = *std::max_element(terms.begin(), terms.end());
  // Small terms first keeps the summation error at a few ulps.
  std::sort(terms.begin(), terms.end());
  double acc = 0.0;
  for (double t : terms) acc += std::exp(t - peak);
  return peak + std::log(acc);
}

ExactScalar scaled_incomplete_gamma(long m, long n, Arithmetic mode) {
  GammaArgs{m, n}.validate();
  if (use_exact(mode, m)) return ExactScalar(mpq_class(scaled_incomplete_gamma_integer(m, n)));
  return ExactScalar::from_log(log_scaled_incomplete_gamma(m, static_cast<double>(n)));
}

ExactScalar gamma_recurrence_residual(long m, long n) {
  GammaArgs{m, n}.validate();
  mpz_class power;
  mpz_ui_pow_ui(power.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(m));
  const mpz_class next = scaled_incomplete_gamma_integer(m + 1, n);
  const mpz_class current = scaled_incomplete_gamma_integer(m, n);
  return ExactScalar(mpq_class(next - current * m - power));
}

double gamma_asymptotic_log(long m) {
  if (m < 1) throw DomainError("gamma_asymptotic_log: m must be >= 1");
  const double mm = static_cast<double>(m);
  return mm * (std::log(mm) - 1.0) + 0.5 * std::log(std::numbers::pi / (2.0 * mm));
}

}  // namespace rumorlab
