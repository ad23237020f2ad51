#include "etapair/numerics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace etapair {

double LogWeight::value() const { return is_zero ? 0.0 : std::exp(log_value); }

LogWeight LogWeight::operator*(const LogWeight& other) const {
  if (is_zero || other.is_zero) return zero();
  return {log_value + other.log_value, false};
}

LogWeight LogWeight::operator/(const LogWeight& other) const {
  if (other.is_zero) throw std::domain_error("LogWeight: division by zero");
  if (is_zero) return zero();
  return {log_value - other.log_value, false};
}

std::uint64_t exact_binomial(std::int64_t m, std::int64_t k) {
  if (m < 0 || m > kExactBinomialLimit)
    throw std::domain_error("exact_binomial: m outside [0, 64]");
  if (k < 0 || k > m) return 0;
  if (k > m - k) k = m - k;
  unsigned __int128 acc = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    // acc * (m - k + i) is divisible by i at every step.
    acc = acc * static_cast<unsigned __int128>(m - k + i) / i;
  }
  return static_cast<std::uint64_t>(acc);
}

LogWeight log_binomial(std::int64_t m, std::int64_t k) {
  if (m < 0) throw std::domain_error("log_binomial: m must be nonnegative");
  if (k < 0 || k > m) return LogWeight::zero();
  if (k == 0 || k == m) return LogWeight::one();
  if (m <= kExactBinomialLimit) {
    return {std::log(static_cast<double>(exact_binomial(m, k))), false};
  }
  const double md = static_cast<double>(m);
  const double kd = static_cast<double>(k);
  return {std::lgamma(md + 1.0) - std::lgamma(kd + 1.0) -
              std::lgamma(md - kd + 1.0),
          false};
}

LogWeight log_falling_factorial(double x, std::int64_t k) {
  if (k < 0) throw std::domain_error("log_falling_factorial: k < 0");
  if (x < 0.0) throw std::domain_error("log_falling_factorial: x < 0");
  if (k == 0) return LogWeight::one();
  const double last = x - static_cast<double>(k - 1);
  if (last <= 0.0) return LogWeight::zero();
  if (k <= 256) {
    CompensatedSum s;
    for (std::int64_t i = 0; i < k; ++i) s += std::log(x - static_cast<double>(i));
    return {s.value(), false};
  }
  return {std::lgamma(x + 1.0) - std::lgamma(last), false};
}

bool is_integral(double x) {
  return x >= 0.0 && x < 9.0e15 && std::floor(x) == x;
}

double hypergeometric_weight(double slots, double pairs, std::int64_t marked,
                             std::int64_t marked_occupied) {
  if (marked < 0 || static_cast<double>(marked) > slots)
    throw std::domain_error("hypergeometric_weight: marked outside [0, slots]");
  if (pairs < 0.0 || pairs > slots)
    throw std::domain_error("hypergeometric_weight: pairs outside [0, slots]");
  const std::int64_t m = marked;
  const std::int64_t j = marked_occupied;
  if (j < 0 || j > m) return 0.0;

  if (is_integral(slots) && is_integral(pairs) &&
      slots <= static_cast<double>(kExactBinomialLimit)) {
    const auto L = static_cast<std::int64_t>(slots);
    const auto N = static_cast<std::int64_t>(pairs);
    const auto num = static_cast<unsigned __int128>(exact_binomial(m, j)) *
                     exact_binomial(L - m, N - j);
    const auto den = exact_binomial(L, N);
    return static_cast<double>(static_cast<long double>(num) /
                               static_cast<long double>(den));
  }

  // C(L-m, N-j)/C(L, N) = (N)_j (L-N)_{m-j} / (L)_m.
  const LogWeight w = log_binomial(m, j) * log_falling_factorial(pairs, j) *
                      log_falling_factorial(slots - pairs, m - j) /
                      log_falling_factorial(slots, m);
  return w.value();
}

void CompensatedSum::add(double x) {
  const double t = sum_ + x;
  if (std::abs(sum_) >= std::abs(x)) {
    compensation_ += (sum_ - t) + x;
  } else {
    compensation_ += (x - t) + sum_;
  }
  sum_ = t;
}

double binary_entropy(double p) {
  if (p <= 0.0 || p >= 1.0) return 0.0;
  return -(p * std::log2(p) + (1.0 - p) * std::log2(1.0 - p));
}

}  // namespace etapair
