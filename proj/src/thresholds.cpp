#include "rumorlab/thresholds.hpp"

#include "rumorlab/errors.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace rumorlab {

namespace {

constexpr double kBracketTop = 1.0 - 1e-9;
constexpr int kBisectionCap = 200;
constexpr double kBisectionTolerance = 1e-12;
constexpr double kResidualLimit = 1e-10;
constexpr double kDoubleSumMaxP = 1.0 - 1e-6;

bool below_one(const ExactScalar& value) {
  if (value.is_exact()) return value.rational() < 1;
  return value.log_value() < 0.0;
}

double log_choose(int n, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

}  // namespace

ThresholdReport p_critical(int d, Arithmetic mode) {
  if (d < 2) throw DomainError("p_c(d) needs d >= 2, got " + std::to_string(d));
  const ExactScalar mean = mean_X(d, mode);
  ThresholdReport report;
  if (mean.is_exact()) {
    report.scalar = ExactScalar(mpq_class(1 / mean.rational()));
  } else {
    report.scalar = ExactScalar::from_log(-mean.log_value());
  }
  report.value = report.scalar.to_double();
  report.asymptotic = std::sqrt(2.0 / (std::numbers::pi * d));
  report.feasible = below_one(report.scalar);
  if (!report.feasible) report.warnings.push_back("p_c(d) >= 1: no phase transition for d = " + std::to_string(d));
  return report;
}

bool is_supercritical(int d, const Probability& p) {
  const ExactScalar mean = mean_X(d);
  if (mean.is_exact()) return p.exact() * mean.rational() > 1;
  return std::log(p.value()) + mean.log_value() > 0.0;
}

double psi_fixed_point(int d, const Probability& p, double tolerance, int* iterations) {
  const PgfSpec spec{d, p.value(), PgfKind::offspring};
  // At exact criticality the iterates approach 1 only like 1/n.
  const ExactScalar mean = mean_X(d);
  if (mean.is_exact() && p.exact() * mean.rational() == 1) {
    if (iterations) *iterations = 0;
    return 1.0;
  }
  double s = 0.0;
  double previous_step = 0.0;
  for (int n = 1; n <= 10'000'000; ++n) {
    const double next = pgf_X_prime(spec, s);
    const double step = next - s;
    s = next;
    if (step <= 0.0) {
      if (iterations) *iterations = n;
      return s;
    }
    if (previous_step > 0.0) {
      const double rate = step / previous_step;
      if (rate < 1.0 && step * rate / (1.0 - rate) < tolerance) {
        if (iterations) *iterations = n;
        return s;
      }
    }
    previous_step = step;
  }
  throw NumericFault("psi fixed-point iteration did not converge");
}

RootResult psi_root(int d, const Probability& p) {
  if (d < 2) throw DomainError("psi needs d >= 2");
  RootResult result;
  if (!is_supercritical(d, p)) return result;

  const PgfSpec spec{d, p.value(), PgfKind::offspring};
  auto excess = [&](double s) { return pgf_X_prime(spec, s) - s; };
  double lo = 0.0;
  double hi = kBracketTop;
  if (excess(hi) >= 0.0) {
    // Root within 1e-9 of one: only reachable a hair above criticality.
    lo = hi;
  } else {
    while (result.iterations < kBisectionCap && hi - lo > kBisectionTolerance) {
      const double mid = 0.5 * (lo + hi);
      if (excess(mid) > 0.0) {
        lo = mid;
      } else {
        hi = mid;
      }
      ++result.iterations;
    }
  }
  result.psi = 0.5 * (lo + hi);
  result.residual = std::fabs(excess(result.psi));
  if (result.residual > kResidualLimit) {
    throw NumericFault("psi bisection residual " + std::to_string(result.residual));
  }
  result.cross_check_gap = std::fabs(result.psi - psi_fixed_point(d, p));
  return result;
}

double theta(int d, const Probability& p) {
  const RootResult root = psi_root(d, p);
  if (root.psi >= 1.0) return 0.0;
  const PgfSpec spec{d, p.value(), PgfKind::root};
  return 1.0 - pgf_N_prime(spec, root.psi);
}

double theta_double_sum(int d, const Probability& p, double psi) {
  if (d < 2) throw DomainError("theta needs d >= 2");
  const double q = p.value();
  if (q > kDoubleSumMaxP) throw DomainError("double-sum form of theta needs p <= 1 - 1e-6");
  if (!(psi >= 0.0 && psi <= 1.0)) throw DomainError("psi must lie in [0, 1]");
  const double log_scale = std::log1p(-q) - std::log(d + 1.0);
  double extinction = 0.0;
  for (int i = 0; i <= d + 1; ++i) {
    const double log_ratio = (i == 0) ? 0.0 : i * std::log(q * psi / (1.0 - q));
    if (i > 0 && psi == 0.0) break;
    double inner = 0.0;
    for (int k = std::max(i, 1); k <= d + 1; ++k) {
      inner += std::exp(std::log(static_cast<double>(k)) + std::lgamma(k + 1.0) + log_choose(k, i) +
                        log_choose(d + 1, k) + k * log_scale + log_ratio);
    }
    extinction += inner;
  }
  return 1.0 - extinction / (d + 1.0);
}

ThresholdReport alpha_critical(int d, int k, int h, BetaForm form, Arithmetic mode) {
  if (d < 3) throw DomainError("alpha_c needs d >= 3, got " + std::to_string(d));
  if (k < 2) throw DomainError("alpha_c needs k >= 2, got " + std::to_string(k));
  if (h < 1) throw DomainError("alpha_c needs h >= 1, got " + std::to_string(h));
  ThresholdReport report = p_critical(d, mode);
  report.asymptotic.reset();
  if (k >= d) {
    report.warnings.push_back("k >= d: the hub-tree threshold formula assumes k < d");
  }
  if (h == 1) return report;

  const ExactScalar b = path_beta(k, form, mode);
  if (b.sign() == 0) {
    report.scalar = ExactScalar::from_log(std::numeric_limits<double>::infinity());
    report.value = std::numeric_limits<double>::infinity();
    report.feasible = false;
    return report;
  }
  if (report.scalar.is_exact() && b.is_exact()) {
    mpq_class amplification = 1;
    const mpq_class inverse = 1 / b.rational();
    for (int i = 1; i < h; ++i) amplification *= inverse;
    report.scalar = ExactScalar(mpq_class(report.scalar.rational() * amplification));
  } else {
    report.scalar = ExactScalar::from_log(report.scalar.log_value() - (h - 1) * b.log_value());
  }
  report.value = report.scalar.to_double();
  report.feasible = below_one(report.scalar);
  return report;
}

int max_h(int d, int k, BetaForm form, Arithmetic mode) {
  if (d < 3) throw DomainError("max_h needs d >= 3");
  if (k < 2) throw DomainError("max_h needs k >= 2");
  const ThresholdReport pc = p_critical(d, mode);
  const ExactScalar b = path_beta(k, form, mode);
  if (b.sign() == 0) return 1;
  // Largest integer strictly below log p_c / log beta + 1, then settled
  // against alpha_critical itself so the two never disagree at the boundary.
  const double bound = pc.scalar.log_value() / b.log_value() + 1.0;
  int h = std::max(1, static_cast<int>(std::ceil(bound)) - 1);
  auto feasible = [&](int candidate) { return alpha_critical(d, k, candidate, form, mode).feasible; };
  while (feasible(h + 1)) ++h;
  while (h > 1 && !feasible(h)) --h;
  return h;
}

double asymptotic_h_bound(double d, double k) {
  if (!(d >= 3.0)) throw DomainError("asymptotic h bound needs d >= 3");
  if (!(k >= 2.0)) throw DomainError("asymptotic h bound needs k >= 2 (log k > 0)");
  return std::log(d) / std::log(k);
}

}  // namespace rumorlab
