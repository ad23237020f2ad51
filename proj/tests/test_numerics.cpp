#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "etapair/numerics.hpp"

using namespace etapair;

namespace {

using u128 = unsigned __int128;

// Pascal's triangle up to row 64, independent of the multiplicative loop.
std::vector<std::vector<u128>> pascal(int rows) {
  std::vector<std::vector<u128>> t(rows + 1);
  for (int m = 0; m <= rows; ++m) {
    t[m].assign(m + 1, 1);
    for (int k = 1; k < m; ++k) t[m][k] = t[m - 1][k - 1] + t[m - 1][k];
  }
  return t;
}

}  // namespace

TEST_CASE("exact binomials agree with Pascal's triangle") {
  const auto t = pascal(64);
  for (int m = 0; m <= 64; ++m)
    for (int k = 0; k <= m; ++k)
      CHECK(static_cast<u128>(exact_binomial(m, k)) == t[m][k]);
  CHECK(exact_binomial(60, 30) == 118264581564861424ULL);
  CHECK(exact_binomial(10, 11) == 0);
  CHECK(exact_binomial(10, -1) == 0);
  CHECK_THROWS_AS(exact_binomial(65, 3), std::domain_error);
}

TEST_CASE("log binomial: exact range and large arguments") {
  for (int m = 0; m <= 64; m += 7)
    for (int k = 0; k <= m; ++k)
      CHECK(log_binomial(m, k).value() ==
            doctest::Approx(static_cast<double>(exact_binomial(m, k))).epsilon(1e-14));
  CHECK(log_binomial(1000, 500).log_value ==
        doctest::Approx(689.467261567851180).epsilon(1e-13));
  CHECK(log_binomial(200, 77).log_value == doctest::Approx(130.442662293561668).epsilon(1e-13));
  CHECK(log_binomial(5, 6).is_zero);
}

TEST_CASE("falling factorial") {
  CHECK(log_falling_factorial(7.0, 3).value() == doctest::Approx(210.0).epsilon(1e-15));
  CHECK(log_falling_factorial(2.5, 2).value() == doctest::Approx(2.5 * 1.5).epsilon(1e-15));
  CHECK(log_falling_factorial(3.0, 0).value() == 1.0);
  CHECK(log_falling_factorial(3.0, 4).is_zero);
  CHECK(log_falling_factorial(2.5, 4).is_zero);
  // the lgamma branch matches a direct product
  double direct = 0.0;
  for (int i = 0; i < 400; ++i) direct += std::log(1000.5 - i);
  CHECK(log_falling_factorial(1000.5, 400).log_value == doctest::Approx(direct).epsilon(1e-12));
}

TEST_CASE("hypergeometric weight by enumeration") {
  // 4 slots, 2 pairs, 2 marked slots, exactly 1 marked slot occupied:
  // subsets {0,2},{0,3},{1,2},{1,3} of 6.
  CHECK(hypergeometric_weight(4, 2, 2, 1) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));

  for (int L = 2; L <= 12; ++L) {
    for (int N = 0; N <= L; ++N) {
      for (int m = 0; m <= L; ++m) {
        std::vector<int> count(m + 1, 0);
        int total = 0;
        for (unsigned s = 0; s < (1U << L); ++s) {
          if (__builtin_popcount(s) != N) continue;
          ++total;
          ++count[__builtin_popcount(s & ((1U << m) - 1))];
        }
        for (int j = 0; j <= m; ++j)
          CHECK(hypergeometric_weight(L, N, m, j) ==
                doctest::Approx(static_cast<double>(count[j]) / total).epsilon(1e-14));
      }
    }
  }
}

TEST_CASE("hypergeometric weight continues smoothly off the integers") {
  const double at = hypergeometric_weight(100.0, 30.0, 4, 2);
  const double near = hypergeometric_weight(100.0 + 1e-9, 30.0, 4, 2);
  CHECK(std::abs(at - near) < 1e-9);
  double sum = 0.0;
  for (int j = 0; j <= 4; ++j) sum += hypergeometric_weight(1000.0, 250.0, 4, j);
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("log weights") {
  const LogWeight two{std::log(2.0), false};
  CHECK((two * two).value() == doctest::Approx(4.0));
  CHECK((two / two).value() == doctest::Approx(1.0));
  CHECK((two * LogWeight::zero()).is_zero);
  CHECK(LogWeight::zero().value() == 0.0);
  CHECK_THROWS(two / LogWeight::zero());
}

TEST_CASE("compensated sum and binary entropy") {
  CompensatedSum s;
  s += 1e16;
  s += 1.0;
  s += -1e16;
  CHECK(s.value() == 1.0);

  CHECK(binary_entropy(0.5) == doctest::Approx(1.0));
  CHECK(binary_entropy(0.0) == 0.0);
  CHECK(binary_entropy(1.0) == 0.0);
  CHECK(binary_entropy(0.25) == doctest::Approx(0.8112781244591328).epsilon(1e-14));
  CHECK(is_integral(4.0));
  CHECK_FALSE(is_integral(4.5));
}
