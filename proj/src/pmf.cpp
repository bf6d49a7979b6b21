#include "rumorlab/pmf.hpp"

#include "rumorlab/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <string>

namespace rumorlab {

// ---- Probability ----------------------------------------------------------

Probability::Probability(mpq_class p) : exact_(std::move(p)) {
  exact_.canonicalize();
  if (sgn(exact_) <= 0 || exact_ > 1) {
    throw DomainError("probability must lie in (0, 1], got " + exact_.get_str());
  }
  value_ = exact_.get_d();
}

Probability Probability::from_double(double p) {
  if (!std::isfinite(p)) throw DomainError("probability must be finite");
  return Probability(mpq_class(p));
}

Probability Probability::from_rational(const mpq_class& p) { return Probability(p); }

Probability Probability::parse(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw DomainError("empty probability");
  if (s.find('/') != std::string::npos) {
    mpq_class q;
    if (q.set_str(s, 10) != 0 || q.get_den() == 0) throw DomainError("bad probability: " + s);
    return Probability(q);
  }
  const bool plain_decimal = std::all_of(s.begin(), s.end(), [](char c) {
    return std::isdigit(static_cast<unsigned char>(c)) || c == '.';
  }) && std::count(s.begin(), s.end(), '.') <= 1;
  if (plain_decimal) {
    const auto dot = s.find('.');
    std::string digits = s;
    std::size_t decimals = 0;
    if (dot != std::string::npos) {
      decimals = s.size() - dot - 1;
      digits.erase(dot, 1);
    }
    if (digits.empty()) throw DomainError("bad probability: " + s);
    mpz_class num(digits, 10);
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, decimals);
    return Probability(mpq_class(num, den));
  }
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0') throw DomainError("bad probability: " + s);
  return from_double(v);
}

std::string Probability::to_string() const { return exact_.get_str(); }

// ---- Pmf ------------------------------------------------------------------

namespace {
constexpr double kFloatMassTolerance = 1e-12;
}

Pmf Pmf::exact(int support_min, std::vector<mpq_class> probabilities) {
  if (probabilities.empty()) throw DomainError("pmf: empty support");
  mpq_class sum = 0;
  for (auto& q : probabilities) {
    q.canonicalize();
    if (sgn(q) < 0) throw DomainError("pmf: negative mass");
    sum += q;
  }
  if (sum != 1) throw DomainError("pmf: exact masses sum to " + sum.get_str());
  Pmf out;
  out.support_min_ = support_min;
  out.probs_.reserve(probabilities.size());
  for (const auto& q : probabilities) out.probs_.push_back(q.get_d());
  out.exact_ = std::move(probabilities);
  return out;
}

Pmf Pmf::floating(int support_min, std::vector<double> probabilities) {
  if (probabilities.empty()) throw DomainError("pmf: empty support");
  double sum = 0.0;
  for (double v : probabilities) {
    if (!(v >= 0.0)) throw DomainError("pmf: negative or NaN mass");
    sum += v;
  }
  if (std::fabs(sum - 1.0) > kFloatMassTolerance) {
    throw DomainError("pmf: masses sum to " + std::to_string(sum));
  }
  Pmf out;
  out.support_min_ = support_min;
  out.probs_ = std::move(probabilities);
  return out;
}

Pmf Pmf::point_mass(int value) { return exact(value, {mpq_class(1)}); }

double Pmf::at(int value) const {
  if (value < support_min_ || value > support_max()) return 0.0;
  return probs_[static_cast<std::size_t>(value - support_min_)];
}

const std::vector<mpq_class>& Pmf::exact_probabilities() const {
  if (!exact_) throw std::logic_error("pmf is not exact");
  return *exact_;
}

mpq_class Pmf::exact_at(int value) const {
  const auto& e = exact_probabilities();
  if (value < support_min_ || value > support_max()) return 0;
  return e[static_cast<std::size_t>(value - support_min_)];
}

double Pmf::total() const {
  double sum = 0.0;
  for (double v : probs_) sum += v;
  return sum;
}

double Pmf::mean() const {
  double m = 0.0;
  for (std::size_t i = 0; i < probs_.size(); ++i) {
    m += probs_[i] * static_cast<double>(support_min_ + static_cast<int>(i));
  }
  return m;
}

std::optional<mpq_class> Pmf::exact_mean() const {
  if (!exact_) return std::nullopt;
  mpq_class m = 0;
  for (std::size_t i = 0; i < exact_->size(); ++i) {
    m += (*exact_)[i] * (support_min_ + static_cast<long>(i));
  }
  return m;
}

double Pmf::pgf(double s) const {
  double acc = 0.0;
  for (auto it = probs_.rbegin(); it != probs_.rend(); ++it) acc = acc * s + *it;
  return acc * std::pow(s, support_min_);
}

Pmf Pmf::extended_to(int new_support_min) const {
  if (new_support_min > support_min_) throw DomainError("pmf: cannot shrink support");
  const auto pad = static_cast<std::size_t>(support_min_ - new_support_min);
  Pmf out;
  out.support_min_ = new_support_min;
  out.probs_.assign(pad, 0.0);
  out.probs_.insert(out.probs_.end(), probs_.begin(), probs_.end());
  if (exact_) {
    std::vector<mpq_class> e(pad, mpq_class(0));
    e.insert(e.end(), exact_->begin(), exact_->end());
    out.exact_ = std::move(e);
  }
  return out;
}

double total_variation(const Pmf& a, const Pmf& b) {
  const int lo = std::min(a.support_min(), b.support_min());
  const int hi = std::max(a.support_max(), b.support_max());
  double sum = 0.0;
  for (int v = lo; v <= hi; ++v) sum += std::fabs(a.at(v) - b.at(v));
  return 0.5 * sum;
}

Pmf binomial_thinning(const Pmf& law, const Probability& p) {
  if (law.support_min() < 0) throw DomainError("thinning needs a non-negative support");
  if (p.is_one()) return law.extended_to(0);
  const int top = law.support_max();
  if (law.is_exact()) {
    const mpq_class& q = p.exact();
    const mpq_class r = 1 - q;
    const mpq_class odds = q / r;
    std::vector<mpq_class> out(static_cast<std::size_t>(top) + 1, mpq_class(0));
    for (int k = law.support_min(); k <= top; ++k) {
      // mass * C(k, i) q^i r^(k-i), starting from i = 0.
      mpq_class term = law.exact_at(k);
      if (sgn(term) == 0) continue;
      for (int j = 0; j < k; ++j) term *= r;
      for (int i = 0; i <= k; ++i) {
        out[static_cast<std::size_t>(i)] += term;
        term *= mpq_class(k - i, i + 1);
        term *= odds;
      }
    }
    return Pmf::exact(0, std::move(out));
  }
  const double q = p.value();
  std::vector<double> out(static_cast<std::size_t>(top) + 1, 0.0);
  for (int k = std::max(0, law.support_min()); k <= top; ++k) {
    const double mass = law.at(k);
    if (mass == 0.0) continue;
    for (int i = 0; i <= k; ++i) {
      const double log_binom = std::lgamma(k + 1.0) - std::lgamma(i + 1.0) - std::lgamma(k - i + 1.0);
      out[static_cast<std::size_t>(i)] +=
          mass * std::exp(log_binom + i * std::log(q) + (k - i) * std::log1p(-q));
    }
  }
  double sum = 0.0;
  for (double v : out) sum += v;
  for (double& v : out) v /= sum;
  return Pmf::floating(0, std::move(out));
}

}  // namespace rumorlab
