#pragma once

// Offspring laws of the rumor process on the Cayley tree T_d (every vertex of
// degree d+1), started from a single spreader at the root.
//
//   X   spreaders produced by a non-root spreader (1 informed + d ignorant
//       neighbours) when every contacted ignorant spreads (p = 1)
//   X'  same, when each contacted ignorant spreads with probability p
//   N   spreaders produced by the root (d+1 ignorant neighbours), p = 1
//   N'  root, thinned by p
//
// A spreader contacts uniformly random neighbours and stops at the first
// contact with an already-informed neighbour, so every law is a finite
// sum of falling factorials over powers of (d+1).

#include "rumorlab/exact_scalar.hpp"
#include "rumorlab/pmf.hpp"
#include "rumorlab/probability.hpp"

namespace rumorlab {

/// Which expression of beta(d) to use.
///   paper:  (e^{d+1} Gamma(d, d+1) - (d-1)!) / (d+1)^d
///   series: sum_{i=1}^{d} (d-1)!/(d-i)! / (d+1)^i, every contact path counted
/// The two differ by exactly (d-1)!/(d+1)^d.
enum class BetaForm { paper, series };

const char* to_string(BetaForm form);
BetaForm parse_beta_form(std::string_view text);

enum class PgfKind { offspring, root };

struct PgfSpec {
  int d = 2;
  double p = 1.0;
  PgfKind kind = PgfKind::offspring;
  void validate() const;
};

/// P(X = i) = C(d,i) (i+1)! / (d+1)^{i+1}, i = 0..d.
Pmf law_X(int d, Arithmetic mode = Arithmetic::automatic);

/// E(X) = d! S(d, d+1) / (d+1)^d.
ExactScalar mean_X(int d, Arithmetic mode = Arithmetic::automatic);

ExactScalar beta_paper(int d, Arithmetic mode = Arithmetic::automatic);
ExactScalar beta_series(int d, Arithmetic mode = Arithmetic::automatic);
ExactScalar beta(int d, BetaForm form, Arithmetic mode = Arithmetic::automatic);

/// beta(k-1) for a path vertex of degree k >= 2. Unlike beta_paper and
/// beta_series this also accepts k = 2 (d = 1): paper form 0, series 1/2.
ExactScalar path_beta(int k, BetaForm form, Arithmetic mode = Arithmetic::automatic);

/// Law of X' by binomial thinning of law_X.
Pmf law_X_prime(int d, const Probability& p, Arithmetic mode = Arithmetic::automatic);

/// G_{X'}(s) from the finite sum (d!/(d+1)) sum_n (n+1) zeta^n / (d-n)!,
/// zeta = (sp + 1 - p)/(d+1).
double pgf_X_prime(const PgfSpec& spec, double s);

/// P(N = i) = i! C(d+1,i) i / (d+1)^{i+1}, i = 1..d+1.
Pmf law_N(int d, Arithmetic mode = Arithmetic::automatic);

/// Law of N' on {0..d+1}. For p < 1 in exact mode this evaluates
///   (p/(1-p))^i (1/(d+1)) sum_{k>=i} k k! C(k,i) C(d+1,k) ((1-p)/(d+1))^k
/// directly; p = 1 returns law_N padded with P(N'=0) = 0.
Pmf law_N_prime(int d, const Probability& p, Arithmetic mode = Arithmetic::automatic);

/// G_{N'}(s) = d! sum_{n=1}^{d+1} n zeta^n / (d+1-n)!.
double pgf_N_prime(const PgfSpec& spec, double s);

double pgf(const PgfSpec& spec, double s);

}  // namespace rumorlab
