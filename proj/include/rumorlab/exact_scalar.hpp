#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

namespace rumorlab {

/// How a quantity built from factorials and powers is evaluated.
///   automatic: exact rationals up to kExactLimit, log-space floats beyond.
///   exact:     always exact rationals (cost grows with the size of d).
///   log_space: always log-space doubles.
enum class Arithmetic { automatic, exact, log_space };

inline constexpr int kExactLimit = 500;

/// True when a computation indexed by `size` should run in rationals.
inline bool use_exact(Arithmetic mode, long size) {
  switch (mode) {
    case Arithmetic::exact:
      return true;
    case Arithmetic::log_space:
      return false;
    case Arithmetic::automatic:
      break;
  }
  return size <= kExactLimit;
}

double log_of(const mpz_class& value);
double log_of(const mpq_class& value);

/// A real number carried either as an exact rational (with its natural log
/// cached) or, when only a float companion is available, as a log-space
/// double. Log-space values are always positive or zero.
class ExactScalar {
 public:
  ExactScalar() : ExactScalar(mpq_class(0)) {}
  explicit ExactScalar(mpq_class value);

  static ExactScalar from_log(double log_value);

  bool is_exact() const { return exact_.has_value(); }
  /// Throws std::logic_error when the value is log-space only.
  const mpq_class& rational() const;

  /// -inf for zero, NaN for negative values.
  double log_value() const { return log_; }
  double to_double() const;
  int sign() const { return sign_; }

  std::string numerator_string() const;
  std::string denominator_string() const;
  std::string to_string() const;

 private:
  std::optional<mpq_class> exact_;
  double log_ = 0.0;
  int sign_ = 0;
};

}  // namespace rumorlab
