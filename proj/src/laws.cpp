#include "rumorlab/laws.hpp"

#include "rumorlab/errors.hpp"
#include "rumorlab/specfun.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace rumorlab {

namespace {

void require_degree(int d) {
  if (d < 2) throw DomainError("d must be >= 2, got " + std::to_string(d));
}

mpz_class power_of(long base, long exponent) {
  mpz_class out;
  mpz_ui_pow_ui(out.get_mpz_t(), static_cast<unsigned long>(base), static_cast<unsigned long>(exponent));
  return out;
}

mpz_class factorial(long n) {
  mpz_class out;
  mpz_fac_ui(out.get_mpz_t(), static_cast<unsigned long>(n));
  return out;
}

double log_sum_exp(const std::vector<double>& terms) {
  double peak = -INFINITY;
  for (double t : terms) peak = std::max(peak, t);
  if (std::isinf(peak)) return peak;
  double acc = 0.0;
  for (double t : terms) acc += std::exp(t - peak);
  return peak + std::log(acc);
}

// Floating P(X = i) by the ratio P(i)/P(i-1) = (d-i+1)(i+1) / (i (d+1)).
std::vector<double> law_X_floats(int d) {
  std::vector<double> out(static_cast<std::size_t>(d) + 1);
  double v = 1.0 / (d + 1.0);
  out[0] = v;
  for (int i = 1; i <= d; ++i) {
    v *= static_cast<double>(d - i + 1) * (i + 1.0) / (static_cast<double>(i) * (d + 1.0));
    out[static_cast<std::size_t>(i)] = v;
  }
  return out;
}

// Floating P(N = i), i = 1..d+1, by P(i)/P(i-1) = (d+2-i) i / ((i-1)(d+1)).
std::vector<double> law_N_floats(int d) {
  std::vector<double> out(static_cast<std::size_t>(d) + 1);
  double v = 1.0 / (d + 1.0);
  out[0] = v;
  for (int i = 2; i <= d + 1; ++i) {
    v *= static_cast<double>(d + 2 - i) * i / ((i - 1.0) * (d + 1.0));
    out[static_cast<std::size_t>(i - 1)] = v;
  }
  return out;
}

double horner(const std::vector<double>& coefficients, double t) {
  double acc = 0.0;
  for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) acc = acc * t + *it;
  return acc;
}

void require_unit_interval(double s) {
  if (!(s >= 0.0 && s <= 1.0)) throw DomainError("pgf argument must lie in [0, 1]");
}

}  // namespace

const char* to_string(BetaForm form) { return form == BetaForm::paper ? "paper" : "series"; }

BetaForm parse_beta_form(std::string_view text) {
  if (text == "paper") return BetaForm::paper;
  if (text == "series") return BetaForm::series;
  throw DomainError("beta form must be 'paper' or 'series'");
}

void PgfSpec::validate() const {
  require_degree(d);
  if (!(p > 0.0 && p <= 1.0)) throw DomainError("p must lie in (0, 1]");
}

Pmf law_X(int d, Arithmetic mode) {
  require_degree(d);
  if (!use_exact(mode, d)) return Pmf::floating(0, law_X_floats(d));
  std::vector<mpq_class> out;
  out.reserve(static_cast<std::size_t>(d) + 1);
  // C(d,i) (i+1)! = d!/(d-i)! * (i+1)
  mpz_class falling = 1;
  mpz_class denominator = d + 1;
  for (int i = 0; i <= d; ++i) {
    if (i > 0) {
      falling *= d - i + 1;
      denominator *= d + 1;
    }
    out.emplace_back(falling * (i + 1), denominator);
  }
  return Pmf::exact(0, std::move(out));
}

ExactScalar mean_X(int d, Arithmetic mode) {
  require_degree(d);
  if (use_exact(mode, d)) {
    const mpz_class scaled = scaled_incomplete_gamma_integer(d, d + 1);
    return ExactScalar(mpq_class(scaled * d, power_of(d + 1, d)));
  }
  return ExactScalar::from_log(std::log(static_cast<double>(d)) +
                               log_scaled_incomplete_gamma(d, d + 1.0) -
                               d * std::log(d + 1.0));
}

namespace {

ExactScalar beta_paper_unchecked(int d, Arithmetic mode) {
  if (use_exact(mode, d)) {
    const mpz_class scaled = scaled_incomplete_gamma_integer(d, d + 1);
    return ExactScalar(mpq_class(scaled - factorial(d - 1), power_of(d + 1, d)));
  }
  const double log_scaled = log_scaled_incomplete_gamma(d, d + 1.0);
  const double log_head = std::lgamma(static_cast<double>(d));
  return ExactScalar::from_log(log_scaled + std::log1p(-std::exp(log_head - log_scaled)) -
                               d * std::log(d + 1.0));
}

// Sum over the first-contact attempt i of P(C_i): the first i-1 contacts hit
// distinct ignorant neighbours other than the designated one.
ExactScalar beta_series_unchecked(int d, Arithmetic mode) {
  if (use_exact(mode, d)) {
    mpq_class term(1, d + 1);
    mpq_class total = 0;
    for (int i = 1; i <= d; ++i) {
      total += term;
      term *= mpq_class(d - i, d + 1);
    }
    return ExactScalar(total);
  }
  std::vector<double> terms;
  terms.reserve(static_cast<std::size_t>(d));
  const double log_head = std::lgamma(static_cast<double>(d));
  for (int i = 1; i <= d; ++i) {
    terms.push_back(log_head - std::lgamma(static_cast<double>(d - i + 1)) - i * std::log(d + 1.0));
  }
  return ExactScalar::from_log(log_sum_exp(terms));
}

}  // namespace

ExactScalar beta_paper(int d, Arithmetic mode) {
  require_degree(d);
  return beta_paper_unchecked(d, mode);
}

ExactScalar beta_series(int d, Arithmetic mode) {
  require_degree(d);
  return beta_series_unchecked(d, mode);
}

ExactScalar beta(int d, BetaForm form, Arithmetic mode) {
  return form == BetaForm::paper ? beta_paper(d, mode) : beta_series(d, mode);
}

ExactScalar path_beta(int k, BetaForm form, Arithmetic mode) {
  if (k < 2) throw DomainError("path vertex degree k must be >= 2, got " + std::to_string(k));
  const int d = k - 1;
  return form == BetaForm::paper ? beta_paper_unchecked(d, mode) : beta_series_unchecked(d, mode);
}

Pmf law_X_prime(int d, const Probability& p, Arithmetic mode) {
  return binomial_thinning(law_X(d, mode), p);
}

double pgf_X_prime(const PgfSpec& spec, double s) {
  spec.validate();
  require_unit_interval(s);
  if (s == 1.0) return 1.0;
  // (d!/(d+1)) (n+1) zeta^n / (d-n)! = P(X = n) (sp + 1 - p)^n
  const double t = s * spec.p + 1.0 - spec.p;
  return horner(law_X_floats(spec.d), t);
}

Pmf law_N(int d, Arithmetic mode) {
  require_degree(d);
  if (!use_exact(mode, d)) return Pmf::floating(1, law_N_floats(d));
  std::vector<mpq_class> out;
  out.reserve(static_cast<std::size_t>(d) + 1);
  // i! C(d+1, i) = (d+1)!/(d+1-i)!
  mpz_class falling = 1;
  mpz_class denominator = d + 1;
  for (int i = 1; i <= d + 1; ++i) {
    falling *= d + 2 - i;
    denominator *= d + 1;
    out.emplace_back(falling * i, denominator);
  }
  return Pmf::exact(1, std::move(out));
}

Pmf law_N_prime(int d, const Probability& p, Arithmetic mode) {
  require_degree(d);
  if (p.is_one()) return law_N(d, mode).extended_to(0);
  if (!use_exact(mode, d)) return binomial_thinning(law_N(d, mode), p);

  const mpq_class& q = p.exact();
  const mpq_class r = 1 - q;
  const mpq_class scale = r / (d + 1);
  // inner_k = k k! C(d+1,k) ((1-p)/(d+1))^k without the C(k,i) factor.
  std::vector<mpq_class> inner(static_cast<std::size_t>(d) + 2);
  {
    mpz_class falling = 1;  // (d+1)!/(d+1-k)! = k! C(d+1, k)
    mpq_class power = 1;
    for (int k = 0; k <= d + 1; ++k) {
      if (k > 0) {
        falling *= d + 2 - k;
        power *= scale;
      }
      inner[static_cast<std::size_t>(k)] = power * falling * k;
    }
  }
  std::vector<mpq_class> out;
  out.reserve(static_cast<std::size_t>(d) + 2);
  const mpq_class odds = q / r;
  mpq_class odds_power = 1;
  for (int i = 0; i <= d + 1; ++i) {
    mpq_class sum = 0;
    mpz_class choose = 1;  // C(k, i) for k = i
    for (int k = i; k <= d + 1; ++k) {
      if (k > i) {
        choose *= k;
        mpz_divexact_ui(choose.get_mpz_t(), choose.get_mpz_t(), static_cast<unsigned long>(k - i));
      }
      sum += inner[static_cast<std::size_t>(k)] * choose;
    }
    out.push_back(odds_power * sum / (d + 1));
    odds_power *= odds;
  }
  return Pmf::exact(0, std::move(out));
}

double pgf_N_prime(const PgfSpec& spec, double s) {
  spec.validate();
  require_unit_interval(s);
  if (s == 1.0) return 1.0;
  const double t = s * spec.p + 1.0 - spec.p;
  // P(N = n) t^n summed over n = 1..d+1.
  return t * horner(law_N_floats(spec.d), t);
}

double pgf(const PgfSpec& spec, double s) {
  return spec.kind == PgfKind::offspring ? pgf_X_prime(spec, s) : pgf_N_prime(spec, s);
}

}  // namespace rumorlab
