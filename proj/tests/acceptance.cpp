// Acceptance suite. Usage: acceptance [criterion ...]; with no arguments
// every criterion runs. One PASS/FAIL line per criterion; exit status is
// non-zero when any criterion fails.

#include "cli.hpp"

#include "rumorlab/ctmc.hpp"
#include "rumorlab/gw.hpp"
#include "rumorlab/laws.hpp"
#include "rumorlab/rng.hpp"
#include "rumorlab/specfun.hpp"
#include "rumorlab/thresholds.hpp"
#include "rumorlab/treegen.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace rumorlab;

namespace {

constexpr std::uint64_t kSeed = 0x5eed2026;

struct Verdict {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + ("failed: " + what);
    }
  }
  void note(const std::string& text) { detail += (detail.empty() ? "" : "; ") + text; }
};

std::string fmt(double x, int digits = 6) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.*g", digits, x);
  return buffer;
}

// floor(x * 10^4 + 1/2) / 10^4 and floor(x * 10^4) / 10^4 of an exact rational,
// as four-decimal strings.
std::string four_decimals(const mpq_class& x, bool round) {
  mpq_class scaled = x * 10000;
  if (round) scaled += mpq_class(1, 2);
  mpz_class units;
  mpz_fdiv_q(units.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%ld.%04ld", units.get_si() / 10000, units.get_si() % 10000);
  return buffer;
}

// Splits one CSV line without quoted fields.
std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  return out;
}

Verdict criterion1() {
  Verdict v;
  const char* published[] = {"0.8205", "0.6620", "0.5634", "0.4955", "0.4454", "0.4067", "0.3759", "0.3505", "0.3293"};
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run({"rumorlab", "--seed", "1", "--format", "csv", "pc-table", "--d-min", "3", "--d-max", "11"},
                            out, err);
  v.require(code == 0, "pc-table exit code " + std::to_string(code));
  std::istringstream lines(out.str());
  std::string line;
  std::getline(lines, line);
  int rounded_matches = 0;
  int truncated_matches = 0;
  std::string mismatches;
  for (int i = 0; i < 9 && std::getline(lines, line); ++i) {
    const auto cells = split(line);
    if (cells.size() < 4) {
      v.require(false, "malformed row " + line);
      continue;
    }
    const int d = std::stoi(cells[0]);
    mpq_class exact(cells[1] + "/" + cells[2]);
    exact.canonicalize();
    v.require(std::fabs(std::stod(cells[3]) - exact.get_d()) < 1e-15, "float column of d=" + cells[0]);
    const std::string rounded = four_decimals(exact, true);
    if (rounded == published[d - 3]) {
      ++rounded_matches;
    } else {
      mismatches += " d=" + cells[0] + ":" + rounded + "!=" + published[d - 3];
    }
    truncated_matches += four_decimals(exact, false) == published[d - 3];
  }
  v.require(rounded_matches == 9, "rounding matches " + std::to_string(rounded_matches) + "/9 (" +
                                      mismatches.substr(1) + ")");
  v.note("truncation to 4 decimals matches " + std::to_string(truncated_matches) + "/9");
  return v;
}

Verdict criterion2() {
  Verdict v;
  v.require(p_critical(3).scalar.rational() == mpq_class(32, 39), "p_critical(3) = 32/39");
  mpq_class unreduced(78, 64);
  unreduced.canonicalize();
  v.require(mean_X(3).rational() == unreduced, "mean_X(3) = 78/64");
  int violations = 0;
  for (int d = 2; d <= 100; ++d) {
    const bool above = mean_X(d, Arithmetic::exact).rational() > 1;
    violations += above != (d >= 3);
  }
  v.require(violations == 0, std::to_string(violations) + " values of d break mean_X(d) > 1 iff d >= 3");
  v.note("p_c(3) = 32/39, E(X) at d=3 is 39/32, iff-property holds for d = 2..100");
  return v;
}

Verdict criterion3() {
  Verdict v;
  double prev_pc = INFINITY;
  double prev_beta = INFINITY;
  std::string trail = "pc gaps";
  std::string beta_trail = "beta gaps";
  for (int d : {10, 100, 1000, 10000}) {
    const double pc = p_critical(d, Arithmetic::log_space).value;
    const double gap_pc = std::fabs(pc * std::sqrt(std::numbers::pi * d / 2.0) - 1.0);
    const double b = beta_paper(d, Arithmetic::log_space).to_double();
    const double gap_beta = std::fabs(b / std::sqrt(std::numbers::pi / (2.0 * d)) - 1.0);
    v.require(gap_pc < prev_pc, "p_c gap not decreasing at d=" + std::to_string(d));
    v.require(gap_beta < prev_beta, "beta gap not decreasing at d=" + std::to_string(d));
    prev_pc = gap_pc;
    prev_beta = gap_beta;
    trail += " " + fmt(gap_pc, 4);
    beta_trail += " " + fmt(gap_beta, 4);
  }
  v.require(prev_pc < 0.02, "p_c gap at d=10^4 is " + fmt(prev_pc));
  v.require(prev_beta < 0.02, "beta gap at d=10^4 is " + fmt(prev_beta));
  v.note(trail);
  v.note(beta_trail);
  return v;
}

Verdict criterion4() {
  Verdict v;
  int nonzero = 0;
  for (long m = 1; m <= 200; ++m) {
    for (long n = 1; n <= 200; ++n) nonzero += gamma_recurrence_residual(m, n).sign() != 0;
  }
  v.require(nonzero == 0, std::to_string(nonzero) + " non-zero residuals");
  v.note("40000 residuals checked");
  return v;
}

Verdict criterion5() {
  Verdict v;
  const Pmf full = offspring_empirical(3, 1.0, 1'000'000, derive_key(kSeed, 51));
  const double tv = total_variation(full, law_X(3));
  v.require(tv < 0.005, "TV distance " + fmt(tv));
  const std::int64_t n = 1'000'000;
  const Pmf half = offspring_empirical(3, 0.5, n, derive_key(kSeed, 52));
  const double mean = half.mean();
  double var = 0.0;
  for (int i = half.support_min(); i <= half.support_max(); ++i) var += half.at(i) * (i - mean) * (i - mean);
  const double se = std::sqrt(var / static_cast<double>(n));
  const double z = std::fabs(mean - 0.609375) / se;
  v.require(z <= 3.0, "mean " + fmt(mean, 8) + " is " + fmt(z, 3) + " SE from 0.609375");
  v.note("TV " + fmt(tv, 3) + ", p=0.5 mean " + fmt(mean, 7) + " (" + fmt(z, 3) + " SE)");
  return v;
}

Verdict criterion6() {
  Verdict v;
  double worst_root = 0.0;
  double worst_sum = 0.0;
  int zero_checks = 0;
  for (int d = 3; d <= 10; ++d) {
    const mpq_class pc = p_critical(d).scalar.rational();
    std::vector<mpq_class> grid;
    for (int i = 1; i <= 20; ++i) grid.emplace_back(i, 20);
    grid.emplace_back(999, 1000);
    grid.push_back(pc);
    for (const mpq_class& q : grid) {
      const Probability p = Probability::from_rational(q);
      const RootResult r = psi_root(d, p);
      if (q != pc) worst_root = std::max(worst_root, std::fabs(r.psi - psi_fixed_point(d, p)));
      const double t = theta(d, p);
      if (q <= mpq_class(999, 1000)) {
        worst_sum = std::max(worst_sum, std::fabs(theta_double_sum(d, p, r.psi) - t));
      }
      if (q <= pc) {
        ++zero_checks;
        v.require(t == 0.0, "theta(" + std::to_string(d) + ", " + p.to_string() + ") = " + fmt(t) + " at or below p_c");
      }
    }
  }
  v.require(worst_root <= 1e-10, "bisection vs fixed point gap " + fmt(worst_root));
  v.require(worst_sum <= 1e-10, "double sum vs pgf gap " + fmt(worst_sum));
  v.note("max root gap " + fmt(worst_root, 3) + ", max theta-form gap " + fmt(worst_sum, 3) + ", " +
         std::to_string(zero_checks) + " subcritical points exactly 0");
  return v;
}

Verdict criterion7() {
  Verdict v;
  const Probability p = Probability::parse("0.9");
  const double analytic = theta(4, p);
  const EstimateCI gw = survival_mc(4, p, 100'000, 60, kDefaultPopulationCap, derive_key(kSeed, 71));
  const SurvivalEstimate mt = estimate_survival_ctmc(TreeTopology::cayley(4), 0.9, 30, 100'000, kDefaultEventCap,
                                                     derive_key(kSeed, 72), LevelMeasure::graph_distance);
  const double gw_vs_theta = separation_in_se(gw.estimate, gw.standard_error(), analytic);
  const double mt_vs_theta = separation_in_se(mt.ci.estimate, mt.ci.standard_error(), analytic);
  const double gw_vs_mt = separation_in_se(gw.estimate, gw.standard_error(), mt.ci.estimate, mt.ci.standard_error());
  v.require(gw_vs_theta <= 3.0, "gw vs theta " + fmt(gw_vs_theta, 3) + " SE");
  v.require(mt_vs_theta <= 3.0, "ctmc vs theta " + fmt(mt_vs_theta, 3) + " SE");
  v.require(gw_vs_mt <= 3.0, "gw vs ctmc " + fmt(gw_vs_mt, 3) + " SE");
  v.note("theta " + fmt(analytic, 6) + ", gw " + fmt(gw.estimate, 5) + ", ctmc " + fmt(mt.ci.estimate, 5) +
         " (cap hits " + std::to_string(mt.cap_hits) + "); separations " + fmt(gw_vs_theta, 3) + "/" +
         fmt(mt_vs_theta, 3) + "/" + fmt(gw_vs_mt, 3) + " SE");
  return v;
}

Verdict criterion8() {
  Verdict v;
  struct Triple {
    int d;
    double p1;
    double p2;
  };
  int failures = 0;
  for (const Triple t : {Triple{3, 0.5, 0.9}, Triple{4, 0.3, 1.0}, Triple{6, 0.45, 0.5}}) {
    for (std::uint64_t s = 0; s < 10'000; ++s) {
      failures += !coupled_monotonicity_trial(t.d, t.p1, t.p2, 30, derive_key(kSeed, s));
    }
  }
  v.require(failures == 0, std::to_string(failures) + " coupled trials violated domination");
  int drops = 0;
  for (int d = 3; d <= 10; ++d) {
    double previous = 0.0;
    for (int i = 1; i <= 100; ++i) {
      const double t = theta(d, Probability::from_rational(mpq_class(i, 100)));
      drops += t - previous < -1e-12;
      previous = t;
    }
  }
  v.require(drops == 0, std::to_string(drops) + " decreases on the theta grid");
  v.note("30000 coupled trials dominated, theta grid nondecreasing");
  return v;
}

Verdict criterion9() {
  Verdict v;
  int mismatches = 0;
  for (int d = 3; d <= 30; ++d) {
    for (int k = 2; k <= 12; ++k) {
      for (BetaForm form : {BetaForm::paper, BetaForm::series}) {
        mismatches += alpha_critical(d, k, 1, form).scalar.rational() != p_critical(d).scalar.rational();
      }
    }
  }
  v.require(mismatches == 0, "alpha_c(d,k,1) != p_c(d) in " + std::to_string(mismatches) + " cases");

  std::mt19937_64 gen(kSeed);
  int inconsistent = 0;
  for (int i = 0; i < 50; ++i) {
    const int d = std::uniform_int_distribution<int>(3, 5000)(gen);
    const int k = std::uniform_int_distribution<int>(2, std::min(d - 1, 60))(gen);
    const int h = max_h(d, k);
    inconsistent += !(alpha_critical(d, k, h).value < 1.0 && alpha_critical(d, k, h + 1).value >= 1.0);
  }
  v.require(inconsistent == 0, std::to_string(inconsistent) + " of 50 max_h pairs inconsistent");

  const double alpha_c = alpha_critical(50, 4, 2).value;
  const SurvivalEstimate low = estimate_survival_ctmc(TreeTopology::hub_path(50, 4, 0.5 * alpha_c, 2), 1.0,
                                                      kDefaultHubLevel, 10'000, kDefaultEventCap,
                                                      derive_key(kSeed, 91));
  const double high_alpha = std::min(1.0, 1.5 * alpha_c);
  const SurvivalEstimate high = estimate_survival_ctmc(TreeTopology::hub_path(50, 4, high_alpha, 2), 1.0,
                                                       kDefaultHubLevel, 10'000, kDefaultEventCap,
                                                       derive_key(kSeed, 92));
  v.require(low.ci.estimate < 0.01, "subcritical reach fraction " + fmt(low.ci.estimate));
  v.require(high.ci.estimate > 0.0 && high.ci.ci_low > 0.0, "supercritical CI low end " + fmt(high.ci.ci_low));
  v.note("alpha_c(50,4,2) = " + fmt(alpha_c, 6) + "; reach " + fmt(low.ci.estimate, 4) + " at 0.5 alpha_c, " +
         fmt(high.ci.estimate, 4) + " [" + fmt(high.ci.ci_low, 4) + ", " + fmt(high.ci.ci_high, 4) +
         "] at alpha " + fmt(high_alpha, 4) + " (level " + std::to_string(kDefaultHubLevel) + " hub generations)");
  return v;
}

Verdict criterion10() {
  Verdict v;
  const EstimateCI ci = path_traversal_empirical(3, 1'000'000, derive_key(kSeed, 101));
  v.require(ci.covers(4.0 / 9.0), "CI [" + fmt(ci.ci_low) + ", " + fmt(ci.ci_high) + "] misses 4/9");
  v.require(!ci.covers(1.0 / 3.0), "CI covers 1/3");

  const int k = 3;
  mpz_class factorial = 1;
  for (int i = 2; i <= k - 2; ++i) factorial *= i;
  mpz_class power;
  mpz_ui_pow_ui(power.get_mpz_t(), k, k - 1);
  mpq_class gap(factorial, power);
  gap.canonicalize();
  const mpq_class measured =
      path_beta(k, BetaForm::series, Arithmetic::exact).rational() - path_beta(k, BetaForm::paper, Arithmetic::exact).rational();
  v.require(measured == gap, "series - paper != (k-2)!/k^(k-1)");

  double worst = 0.0;
  for (int big = 30; big <= 200; ++big) {
    const double paper = path_beta(big, BetaForm::paper).to_double();
    const double series = path_beta(big, BetaForm::series).to_double();
    worst = std::max(worst, std::fabs(paper - series) / series);
  }
  v.require(worst < 1e-10, "k >= 30 relative gap " + fmt(worst));
  v.note("empirical " + fmt(ci.estimate, 6) + " [" + fmt(ci.ci_low, 6) + ", " + fmt(ci.ci_high, 6) +
         "], exact gap (k-2)!/k^(k-1) at k=3 is " + gap.get_str() + ", max relative gap for k in 30..200 " +
         fmt(worst, 3));
  return v;
}

struct Criterion {
  const char* title;
  double budget_seconds;
  std::function<Verdict()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria{
      {"table of p_c(d), d = 3..11, rounded to 4 decimals", 1.0, criterion1},
      {"exact threshold identity", 1.0, criterion2},
      {"asymptotics of p_c and beta", 5.0, criterion3},
      {"incomplete gamma recurrence, 1 <= m,n <= 200", 10.0, criterion4},
      {"offspring oracle", 120.0, criterion5},
      {"psi and theta consistency", 30.0, criterion6},
      {"triple cross-validation of survival at d=4, p=0.9", 600.0, criterion7},
      {"monotone coupling", 120.0, criterion8},
      {"hub-tree threshold behaviour", 900.0, criterion9},
      {"beta audit", 120.0, criterion10},
  };
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) {
    const int n = std::atoi(argv[i]);
    if (n < 1 || n > static_cast<int>(criteria.size())) {
      std::cerr << "unknown criterion " << argv[i] << '\n';
      return 2;
    }
    selected.push_back(n);
  }
  if (selected.empty()) {
    for (int n = 1; n <= static_cast<int>(criteria.size()); ++n) selected.push_back(n);
  }

  int failed = 0;
  for (int n : selected) {
    const Criterion& c = criteria[static_cast<std::size_t>(n - 1)];
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v.require(false, std::string("exception: ") + e.what());
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    v.require(seconds < c.budget_seconds, "runtime " + fmt(seconds, 3) + " s over budget " + fmt(c.budget_seconds) + " s");
    failed += !v.pass;
    std::cout << "criterion " << n << ": " << (v.pass ? "PASS" : "FAIL") << " | " << c.title << " | " << v.detail
              << " | " << fmt(seconds, 3) << " s" << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
