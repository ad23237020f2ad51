#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "etapair/measures.hpp"
#include "etapair/model.hpp"
#include "etapair/numerics.hpp"
#include "etapair/oracle.hpp"

using namespace etapair;

namespace {

double h2(double p) {
  if (p <= 0.0 || p >= 1.0) return 0.0;
  return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

double shannon(std::initializer_list<std::pair<double, double>> weighted) {
  double s = 0.0;
  for (const auto& [p, mult] : weighted)
    if (p > 0.0) s -= mult * p * std::log2(p);
  return s;
}

}  // namespace

TEST_CASE("single-mode entropy") {
  CHECK(single_mode_entropy(0.5) == doctest::Approx(2.0));
  CHECK(single_mode_entropy(0.0) == 0.0);
  for (const double a : {0.05, 0.2, 0.37}) {
    CHECK(single_mode_entropy(a) == doctest::Approx(2.0 * h2(a)).epsilon(1e-14));
    CHECK(vn_entropy(single_mode_spectrum_tdl(a)) ==
          doctest::Approx(2.0 * h2(a)).epsilon(1e-14));
  }
  CHECK(single_mode_entropy(0.5, LogBase::nats) == doctest::Approx(2.0 * std::log(2.0)));
  CHECK_THROWS_AS(single_mode_entropy(-0.1), std::domain_error);
}

TEST_CASE("paired-mode entropy: both forms") {
  for (const double a : {0.1, 0.25, 0.5}) {
    const double spec =
        shannon({{(1 - a) * (1 - a), 1.0}, {2 * a * (1 - a), 1.0}, {a * a, 1.0}});
    CHECK(paired_modes_entropy(a, FormulaPath::spectrum) == doctest::Approx(spec).epsilon(1e-14));
    CHECK(paired_modes_entropy(a, FormulaPath::spectrum) ==
          doctest::Approx(2 * h2(a) - 2 * a * (1 - a)).epsilon(1e-13));
    CHECK(paired_modes_entropy(a, FormulaPath::printed) ==
          doctest::Approx(2 * h2(a) + a * (1 - a)).epsilon(1e-14));
  }
  CHECK(paired_modes_entropy(0.5) == doctest::Approx(1.5));
}

TEST_CASE("pair mutual information forms agree and respect subadditivity") {
  for (double a = 0.0; a <= 0.5; a += 0.01) {
    const double printed = pair_mutual_information(a, FormulaPath::printed);
    const double spectrum = pair_mutual_information(a, FormulaPath::spectrum);
    CHECK(printed == doctest::Approx(spectrum).epsilon(1e-13).scale(1.0));
    CHECK(spectrum >= -1e-15);
    CHECK(paired_modes_entropy(a) <= 2.0 * single_mode_entropy(a) + 1e-14);
  }
}

TEST_CASE("two-pair mutual information") {
  CHECK(two_pair_mutual_information(0.5).mutual_information ==
        doctest::Approx(0.9693609).epsilon(1e-7));
  for (double a = 0.0; a <= 0.5; a += 0.05) {
    const auto p = two_pair_mutual_information(a, FormulaPath::printed);
    const auto s = two_pair_mutual_information(a, FormulaPath::spectrum);
    CHECK(p.mutual_information ==
          doctest::Approx(s.mutual_information).epsilon(1e-12).scale(1.0));
    CHECK(p.negativity == 0.0);
  }
}

TEST_CASE("negativity conventions") {
  CHECK(pair_negativity(0.5) == doctest::Approx(0.25 / 3.0));
  CHECK(pair_negativity(0.5, FormulaPath::spectrum) == doctest::Approx(0.25));
  CHECK(pair_negativity(0.0) == 0.0);
}

TEST_CASE("ODLRO identity with the printed negativity") {
  for (double n = 0.02; n <= 1.0; n += 0.07) {
    for (double u = -7.0; u <= 4.0; u += 0.23) {
      const auto g = ground_state({n, u});
      const double lhs = odlro(g.n_s, g.n_d);
      const double rhs = 3.0 * pair_negativity(g.a) * (1 - g.n_s) * (1 - g.n_s);
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12).scale(1.0));
    }
  }
}

TEST_CASE("finite-size pair negativity from the exact state") {
  // Plain partial transpose of the (k, -k) pair: half the probability that
  // exactly one of the two slots is occupied.
  for (const int L : {6, 8, 12, 16}) {
    for (int Nd = 1; Nd < L; ++Nd) {
      const auto st = oracle::build_state(L, Nd);
      const auto rdm = oracle::exact_rdm(st, {0, st.partner(0)});
      const double p1 = hypergeometric_weight(L, Nd, 2, 1);
      CHECK(oracle::exact_negativity(rdm, {1}) == doctest::Approx(p1 / 2).epsilon(1e-12));
    }
  }
  // decreasing towards a(1-a) at a = 1/8, well above a(1-a)/3
  double prev = 1.0;
  for (const int L : {8, 16}) {
    const auto st = oracle::build_state(L, L / 8);
    const double neg = oracle::exact_negativity(oracle::exact_rdm(st, {0, st.partner(0)}), {1});
    CHECK(neg < prev);
    CHECK(neg > pair_negativity(0.125, FormulaPath::spectrum));
    prev = neg;
  }
  CHECK(prev == doctest::Approx(0.11666666666666667).epsilon(1e-10));
}

TEST_CASE("finite-size two-pair negativity is nonzero and decays") {
  const auto st = oracle::build_state(8, 4);
  const auto rdm = oracle::exact_rdm(st, {0, st.partner(0), 1, st.partner(1)});
  CHECK(oracle::exact_negativity(rdm, {2, 3}) == doctest::Approx(13.0 / 70.0).epsilon(1e-12));

  const auto st12 = oracle::build_state(12, 6);
  const auto rdm12 = oracle::exact_rdm(st12, {0, st12.partner(0), 1, st12.partner(1)});
  const double n12 = oracle::exact_negativity(rdm12, {2, 3});
  CHECK(n12 < 13.0 / 70.0);
  CHECK(n12 == doctest::Approx(0.10606).epsilon(1e-4));
}

TEST_CASE("block entropy grows by half a bit per doubling at a = 1/2") {
  for (const std::int64_t P : {512, 1024, 2048}) {
    const double d = block_entropy_tdl(0.5, {0, 2 * P}) - block_entropy_tdl(0.5, {0, P});
    CHECK(d == doctest::Approx(0.5).epsilon(0.1));
  }
}

TEST_CASE("finite-size block entropy matches the oracle") {
  const auto st = oracle::build_state(10, 4);
  const auto rdm = oracle::exact_rdm(st, {0, st.partner(0), 3});
  CHECK(block_entropy(PairSector(10, 4), {1, 1}) ==
        doctest::Approx(oracle::exact_entropy(rdm)).epsilon(1e-12));
}
