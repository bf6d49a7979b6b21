#pragma once

// Integer-argument incomplete gamma function
//
//   Gamma(m, n) = (m-1)! e^{-n} S(m, n),   S(m, n) = sum_{i=0}^{m-1} n^i / i!
//
// Everything downstream only needs e^n Gamma(m, n) = (m-1)! S(m, n), which is
// an integer, so the transcendental factor never has to be evaluated.

#include "rumorlab/exact_scalar.hpp"

#include <gmpxx.h>

namespace rumorlab {

struct GammaArgs {
  long m = 1;  // >= 1
  long n = 0;  // >= 0
  void validate() const;
};

/// S(m, n) as an exact rational.
ExactScalar partial_exp_sum(long m, long n);

/// e^n Gamma(m, n) = (m-1)! S(m, n). Exact in rationals, or log-space when
/// the mode asks for it (n may then be large without cost blowing up).
ExactScalar scaled_incomplete_gamma(long m, long n,
                                    Arithmetic mode = Arithmetic::exact);

/// Integer form of scaled_incomplete_gamma, summed term by term.
mpz_class scaled_incomplete_gamma_integer(long m, long n);

/// log((m-1)! S(m, x)) for real x > 0 via a log-sum-exp over the m terms.
double log_scaled_incomplete_gamma(long m, double x);

/// e^n Gamma(m+1, n) - m e^n Gamma(m, n) - n^m; zero for every valid input.
ExactScalar gamma_recurrence_residual(long m, long n);

/// log of (m/e)^m sqrt(pi / (2m)), the leading-order size of Gamma(m, m+1).
double gamma_asymptotic_log(long m);

}  // namespace rumorlab
