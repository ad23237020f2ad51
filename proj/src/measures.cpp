#include "etapair/measures.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "etapair/numerics.hpp"

namespace etapair {

namespace {

void check_a(double a) {
  if (!(a >= 0.0 && a <= 1.0))
    throw std::domain_error("correlation parameter a must lie in [0, 1]");
}

}  // namespace

double in_base(double bits, LogBase base) {
  return base == LogBase::bits ? bits : bits * std::numbers::ln2;
}

double vn_entropy(const Spectrum& s, LogBase base) {
  CompensatedSum acc;
  for (const auto& e : s.entries()) {
    if (e.eigenvalue <= 0.0) continue;
    acc += -static_cast<double>(e.multiplicity) * e.eigenvalue * std::log2(e.eigenvalue);
  }
  return in_base(std::max(acc.value(), 0.0), base);
}

double single_mode_entropy(double a, LogBase base) {
  check_a(a);
  return in_base(2.0 * binary_entropy(a), base);
}

double pair_mutual_information(double a, FormulaPath path, LogBase base) {
  check_a(a);
  if (path == FormulaPath::printed)
    return in_base(2.0 * binary_entropy(a) + 2.0 * a * (1.0 - a), base);
  const double single = vn_entropy(single_mode_spectrum_tdl(a));
  const double pair = vn_entropy(mixed_block_spectrum_tdl(a, BlockSpec{0, 1}));
  return in_base(std::max(2.0 * single - pair, 0.0), base);
}

double pair_negativity(double a, FormulaPath path) {
  check_a(a);
  const double p = a * (1.0 - a);
  return path == FormulaPath::printed ? p / 3.0 : p;
}

double paired_modes_entropy(double a, FormulaPath path, LogBase base) {
  check_a(a);
  if (path == FormulaPath::printed)
    return in_base(2.0 * binary_entropy(a) + a * (1.0 - a), base);
  return vn_entropy(mixed_block_spectrum_tdl(a, BlockSpec{0, 1}), base);
}

TwoPairCorrelations two_pair_mutual_information(double a, FormulaPath path,
                                                LogBase base) {
  check_a(a);
  TwoPairCorrelations out;
  if (path == FormulaPath::printed) {
    const double p = a * (1.0 - a);
    out.mutual_information =
        in_base(2.0 * p * (2.0 + p * (3.0 * std::log2(3.0) - 5.0)), base);
  } else {
    const double one = vn_entropy(mixed_block_spectrum_tdl(a, BlockSpec{0, 1}));
    const double two = vn_entropy(mixed_block_spectrum_tdl(a, BlockSpec{0, 2}));
    out.mutual_information = in_base(std::max(2.0 * one - two, 0.0), base);
  }
  out.negativity = 0.0;
  return out;
}

double odlro(double n_s, double n_d) {
  if (n_s < 0.0 || n_d < 0.0 || n_s + n_d > 1.0)
    throw std::domain_error("odlro: requires n_s, n_d >= 0 and n_s + n_d <= 1");
  return n_d * (1.0 - n_s - n_d);
}

double block_entropy(const PairSector& sector, const BlockSpec& block, LogBase base) {
  return vn_entropy(mixed_block_spectrum(sector, block), base);
}

double block_entropy_tdl(double a, const BlockSpec& block, LogBase base) {
  return vn_entropy(mixed_block_spectrum_tdl(a, block), base);
}

}  // namespace etapair
