#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace rumorlab {

/// A spread or connection probability in (0, 1], held as an exact rational
/// alongside its double value so criticality tests can be decided exactly.
class Probability {
 public:
  /// The double is taken at face value (its exact binary expansion).
  static Probability from_double(double p);
  static Probability from_rational(const mpq_class& p);
  /// Accepts "a/b", plain decimals ("0.9" is exactly 9/10), or anything
  /// strtod understands (taken as a double).
  static Probability parse(std::string_view text);

  double value() const { return value_; }
  const mpq_class& exact() const { return exact_; }
  bool is_one() const { return exact_ == 1; }
  std::string to_string() const;

 private:
  explicit Probability(mpq_class p);
  mpq_class exact_;
  double value_ = 1.0;
};

}  // namespace rumorlab
