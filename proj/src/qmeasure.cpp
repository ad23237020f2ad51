#include "etapair/qmeasure.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "etapair/numerics.hpp"

namespace etapair {

namespace {

LogWeight log_factorial(std::int64_t k) {
  return {std::lgamma(static_cast<double>(k) + 1.0), false};
}

// prod_{i<count} (start - 2i), zero once a factor is not positive.
LogWeight log_stride2_product(double start, std::int64_t count) {
  LogWeight acc = LogWeight::one();
  for (std::int64_t i = 0; i < count; ++i) {
    const double f = start - 2.0 * static_cast<double>(i);
    if (f <= 0.0) return LogWeight::zero();
    acc = acc * LogWeight{std::log(f), false};
  }
  return acc;
}

void check_counts(double slots, std::int64_t D, std::int64_t paired_modes) {
  if (D < 0 || paired_modes < 0 || paired_modes > D)
    throw std::domain_error("partition_count: requires 0 <= D2 <= D");
  if (paired_modes % 2 != 0)
    throw std::domain_error("partition_count: D2 must be even");
  if (!(slots >= 0.0)) throw std::domain_error("partition_count: negative slot count");
}

// Weight count(D2) / C(L', D) in log space.
LogWeight block_fraction(double slots, std::int64_t D, std::int64_t D2,
                         PartitionCounting counting) {
  const double c = partition_count(slots, D, D2, counting);
  if (c <= 0.0) return LogWeight::zero();
  const LogWeight total = log_falling_factorial(slots, D) / log_factorial(D);
  return LogWeight{std::log(c), false} / total;
}

// Non-integral sectors: divide out the trace drift of the continuation.
double renormalized(double purity, double trace, const PairSector& sector) {
  if (sector.exact() || trace <= 0.0) return purity;
  return purity / (trace * trace);
}

}  // namespace

void QParams::validate() const {
  if (!(L > 0.0) || !std::isfinite(L)) throw std::domain_error("QParams: L must be positive");
  if (!(N_s >= 0.0 && N_s < L)) throw std::domain_error("QParams: N_s outside [0, L)");
  if (D < 1) throw std::domain_error("QParams: D must be >= 1");
  if (static_cast<double>(D) > slots())
    throw std::domain_error("QParams: block size exceeds L - N_s");
  if (!(N_d >= 0.0 && N_d <= slots()))
    throw std::domain_error("QParams: N_d outside [0, L - N_s]");
}

double purity_open(const PairSector& sector, std::int64_t lone_modes) {
  if (lone_modes < 0) throw std::domain_error("purity_open: D1 < 0");
  const std::int64_t half = 2 * lone_modes;
  if (static_cast<double>(half) > sector.slots)
    throw std::domain_error("purity_open: 2 D1 exceeds slot count");
  CompensatedSum acc;
  CompensatedSum trace;
  for (std::int64_t M = 0; M <= half; ++M) {
    // C(L'-2D1, N_d-M) / C(L', N_d) = C(2D1, M)^-1 * hypergeometric(2D1, M).
    const double h = hypergeometric_weight(sector.slots, sector.pairs, half, M);
    if (h <= 0.0) continue;
    const LogWeight mult = log_binomial(half, M);
    const LogWeight lambda = LogWeight{std::log(h), false} / mult;
    acc += (mult * lambda * lambda).value();
    trace += h;
  }
  return renormalized(acc.value(), trace.value(), sector);
}

double purity_paired(const PairSector& sector, std::int64_t paired_modes) {
  if (paired_modes < 0 || paired_modes % 2 != 0)
    throw std::domain_error("purity_paired: D2 must be even and >= 0");
  if (static_cast<double>(paired_modes) > sector.slots)
    throw std::domain_error("purity_paired: D2 exceeds slot count");
  CompensatedSum acc;
  CompensatedSum trace;
  for (std::int64_t alpha = 0; alpha <= paired_modes; ++alpha) {
    const double p = hypergeometric_weight(sector.slots, sector.pairs, paired_modes, alpha);
    acc += p * p;
    trace += p;
  }
  return renormalized(acc.value(), trace.value(), sector);
}

double partition_count(double slots, std::int64_t D, std::int64_t paired_modes) {
  check_counts(slots, D, paired_modes);
  const std::int64_t D1 = D - paired_modes;
  const LogWeight lone = log_stride2_product(slots, D1) / log_factorial(D1);
  const LogWeight pairs =
      log_stride2_product(slots - 2.0 * static_cast<double>(D1), paired_modes / 2) /
      log_factorial(paired_modes);
  return (lone * pairs).value();
}

double partition_count_combinatorial(double slots, std::int64_t D,
                                     std::int64_t paired_modes) {
  check_counts(slots, D, paired_modes);
  const std::int64_t D1 = D - paired_modes;
  const std::int64_t P = paired_modes / 2;
  const double momentum_pairs = slots / 2.0;
  // C(L'/2, P) complete pairs, then D1 of the remaining pairs, one of two
  // modes each.
  const LogWeight full = log_falling_factorial(momentum_pairs, P) / log_factorial(P);
  const double remaining = momentum_pairs - static_cast<double>(P);
  if (remaining < 0.0) return 0.0;
  const LogWeight lone = log_falling_factorial(remaining, D1) / log_factorial(D1) *
                         LogWeight{static_cast<double>(D1) * std::log(2.0), false};
  return (full * lone).value();
}

double partition_count(double slots, std::int64_t D, std::int64_t paired_modes,
                       PartitionCounting counting) {
  return counting == PartitionCounting::printed
             ? partition_count(slots, D, paired_modes)
             : partition_count_combinatorial(slots, D, paired_modes);
}

double q_measure(const QParams& p) {
  p.validate();
  const PairSector sector(p.slots(), p.N_d);
  // Weights are renormalized over the block types that fit; for an even,
  // integral slot count with combinatorial counting they already sum to 1.
  CompensatedSum average;
  CompensatedSum weight;
  for (std::int64_t D2 = 0; D2 <= p.D; D2 += 2) {
    const std::int64_t D1 = p.D - D2;
    if (static_cast<double>(2 * D1 + D2) > sector.slots &&
        p.mode == QMode::exact_spectrum)
      continue;  // no such block fits in the sector
    const LogWeight w = block_fraction(sector.slots, p.D, D2, p.counting);
    if (w.is_zero) continue;
    double purity = 0.0;
    if (p.mode == QMode::paper_product) {
      if (static_cast<double>(2 * D1) > sector.slots) continue;
      purity = purity_open(sector, D1) * purity_paired(sector, D2);
    } else {
      purity = mixed_block_purity(sector, BlockSpec{D1, D2 / 2});
    }
    average += w.value() * purity;
    weight += w.value();
  }
  if (weight.value() <= 0.0) throw std::domain_error("q_measure: no block of size D fits");
  // 4^D / (4^D - 1) = 1 / (1 - 4^-D)
  const double norm = 1.0 / (1.0 - std::pow(4.0, -static_cast<double>(p.D)));
  return std::clamp(norm * (1.0 - average.value() / weight.value()), 0.0, 1.0);
}

}  // namespace etapair
