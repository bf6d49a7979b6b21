#pragma once

#include "rumorlab/exact_scalar.hpp"
#include "rumorlab/laws.hpp"
#include "rumorlab/probability.hpp"

#include <optional>
#include <string>
#include <vector>

namespace rumorlab {

/// A critical value. `scalar` holds the exact rational when it is
/// representable in the chosen arithmetic, else the log-space value.
struct ThresholdReport {
  ExactScalar scalar;
  double value = 0.0;
  std::optional<double> asymptotic;
  bool feasible = false;  // threshold lies in (0, 1)
  std::vector<std::string> warnings;
};

struct RootResult {
  double psi = 1.0;
  int iterations = 0;
  double residual = 0.0;  // |G(psi) - psi|
  /// |psi - fixed-point iterate|; zero when the process is not supercritical.
  double cross_check_gap = 0.0;
};

/// p_c(d) = (d+1)^d / (d! S(d, d+1)) = 1 / E(X). For d = 2 the report is
/// infeasible (value 9/8).
ThresholdReport p_critical(int d, Arithmetic mode = Arithmetic::automatic);

/// p * E(X) > 1, decided in exact rationals when d is within the exact range.
bool is_supercritical(int d, const Probability& p);

/// Smallest non-negative root of G_{X'}(s) = s: bisection on [0, 1 - 1e-9]
/// (200 steps, 1e-12 bracket), cross-checked against fixed-point iteration.
RootResult psi_root(int d, const Probability& p);

/// Fixed-point iteration s <- G_{X'}(s) from s = 0, stopped when the
/// geometric tail estimate of the remaining error drops below `tolerance`.
/// An exactly critical law (p E(X) = 1) returns 1 without iterating.
double psi_fixed_point(int d, const Probability& p, double tolerance = 1e-13,
                       int* iterations = nullptr);

/// Survival probability 1 - G_{N'}(psi); zero when p <= p_c(d).
double theta(int d, const Probability& p);

/// The double-sum expression
///   1 - (1/(d+1)) sum_i (p psi/(1-p))^i sum_{k>=i} k k! C(k,i) C(d+1,k) ((1-p)/(d+1))^k
/// Only defined for p <= 1 - 1e-6; throws DomainError otherwise.
double theta_double_sum(int d, const Probability& p, double psi);

/// alpha_c(d,k,h) = p_c(d) beta(k-1)^{1-h}. Values >= 1 are reported with
/// feasible = false. Warns when k >= d.
ThresholdReport alpha_critical(int d, int k, int h, BetaForm form = BetaForm::paper,
                               Arithmetic mode = Arithmetic::automatic);

/// Largest h with alpha_critical(d,k,h) < 1, i.e. h < log p_c / log beta + 1.
int max_h(int d, int k, BetaForm form = BetaForm::paper,
          Arithmetic mode = Arithmetic::automatic);

/// log d / log k.
double asymptotic_h_bound(double d, double k);

}  // namespace rumorlab
