#pragma once

#include <cstdint>
#include <optional>

namespace etapair {

/// Natural-log magnitude of a nonnegative quantity, with an explicit zero.
struct LogWeight {
  double log_value = 0.0;
  bool is_zero = false;

  static LogWeight zero() { return {0.0, true}; }
  static LogWeight one() { return {0.0, false}; }

  double value() const;
  LogWeight operator*(const LogWeight& other) const;
  LogWeight operator/(const LogWeight& other) const;
};

/// Largest argument for which binomials are evaluated in exact integer
/// arithmetic. C(64, 32) < 2^61.
inline constexpr std::int64_t kExactBinomialLimit = 64;

/// Exact C(m, k) for 0 <= m <= 64; zero outside the support.
std::uint64_t exact_binomial(std::int64_t m, std::int64_t k);

/// log C(m, k) via log-gamma; zero flag when k < 0 or k > m.
LogWeight log_binomial(std::int64_t m, std::int64_t k);

/// log of the falling factorial x (x-1) ... (x-k+1) for real x >= 0.
///
/// For non-integral x the product is continued as zero once the last factor
/// would turn negative, so the value is continuous in x and agrees with the
/// integer definition at integral x.
LogWeight log_falling_factorial(double x, std::int64_t k);

/// C(m, j) C(slots - m, pairs - j) / C(slots, pairs).
///
/// Integral arguments with slots <= 64 go through exact integers; everything
/// else through falling factorials in log space, which also accepts
/// non-integral `slots` and `pairs`.
double hypergeometric_weight(double slots, double pairs, std::int64_t marked,
                             std::int64_t marked_occupied);

/// True when x is a nonnegative integer representable exactly.
bool is_integral(double x);

/// Neumaier-compensated sum.
class CompensatedSum {
 public:
  void add(double x);
  double value() const { return sum_ + compensation_; }
  CompensatedSum& operator+=(double x) {
    add(x);
    return *this;
  }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

/// Binary entropy in bits, with 0 log 0 := 0.
double binary_entropy(double p);

}  // namespace etapair
