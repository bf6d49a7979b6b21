#include "rumorlab/exact_scalar.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace rumorlab {

double log_of(const mpz_class& value) {
  if (sgn(value) <= 0) {
    return sgn(value) == 0 ? -std::numeric_limits<double>::infinity()
                           : std::numeric_limits<double>::quiet_NaN();
  }
  long exponent = 0;
  const double mantissa = mpz_get_d_2exp(&exponent, value.get_mpz_t());
  return std::log(mantissa) + static_cast<double>(exponent) * std::numbers::ln2;
}

double log_of(const mpq_class& value) {
  if (sgn(value) <= 0) {
    return sgn(value) == 0 ? -std::numeric_limits<double>::infinity()
                           : std::numeric_limits<double>::quiet_NaN();
  }
  return log_of(value.get_num()) - log_of(value.get_den());
}

ExactScalar::ExactScalar(mpq_class value) {
  value.canonicalize();
  sign_ = sgn(value);
  log_ = log_of(value);
  exact_ = std::move(value);
}

ExactScalar ExactScalar::from_log(double log_value) {
  ExactScalar out;
  out.exact_.reset();
  out.log_ = log_value;
  out.sign_ = std::isinf(log_value) && log_value < 0 ? 0 : 1;
  return out;
}

const mpq_class& ExactScalar::rational() const {
  if (!exact_) throw std::logic_error("ExactScalar: value is log-space only");
  return *exact_;
}

double ExactScalar::to_double() const {
  if (exact_) {
    const double direct = exact_->get_d();
    // mpq_get_d truncates; fall back to the log when the quotient leaves the
    // normal range.
    if (direct != 0.0 && std::isfinite(direct) && std::fabs(direct) > 1e-300) return direct;
    if (sign_ == 0) return 0.0;
    const double magnitude = std::exp(log_of(mpq_class(abs(*exact_))));
    return sign_ < 0 ? -magnitude : magnitude;
  }
  return sign_ == 0 ? 0.0 : std::exp(log_);
}

std::string ExactScalar::numerator_string() const {
  return exact_ ? exact_->get_num().get_str() : std::string();
}

std::string ExactScalar::denominator_string() const {
  return exact_ ? exact_->get_den().get_str() : std::string();
}

std::string ExactScalar::to_string() const {
  if (exact_) return exact_->get_str();
  return "exp(" + std::to_string(log_) + ")";
}

}  // namespace rumorlab
