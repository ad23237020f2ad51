#pragma once

#include <cstdint>

#include "etapair/spectra.hpp"

namespace etapair {

/// How the block purity entering the Q average is obtained.
///   paper_product:  Tr(rho_{D1}^2) Tr(rho_{D2}^2), each factor evaluated
///                   over the full correlated sector
///   exact_spectrum: purity of the exact mixed block
enum class QMode { paper_product, exact_spectrum };

/// How the number of D-mode blocks with D2 paired modes is counted.
///   combinatorial: C(L'/2, D2/2) C(L'/2 - D2/2, D1) 2^D1, which sums to
///                  C(L', D) over D2
///   printed:       the closed form with D2! in the denominator, which
///                  undercounts blocks with two or more complete pairs
enum class PartitionCounting { combinatorial, printed };

/// Chain of length L with N_s unpaired fermions and N_d eta pairs; blocks of
/// D modes are averaged over the L' = L - N_s correlated modes.
///
/// Counts may be non-integral, in which case all combinatorial factors are
/// continued through falling factorials.
struct QParams {
  double L = 0.0;
  double N_s = 0.0;
  double N_d = 0.0;
  std::int64_t D = 1;
  QMode mode = QMode::exact_spectrum;
  PartitionCounting counting = PartitionCounting::combinatorial;

  double slots() const { return L - N_s; }
  void validate() const;
};

/// Tr rho^2 for D1 lone modes:
/// sum_M C(2 D1, M) [C(L'-2 D1, N_d-M) / C(L', N_d)]^2.
double purity_open(const PairSector& sector, std::int64_t lone_modes);

/// Tr rho^2 for D2 paired modes (D2/2 complete pairs):
/// sum_alpha [C(D2, alpha) C(L'-D2, N_d-alpha) / C(L', N_d)]^2.
double purity_paired(const PairSector& sector, std::int64_t paired_modes);

/// Number of D-mode blocks holding D2 paired modes, per the printed closed
/// form: [prod_{i<D1} (L'-2i) / D1!] [prod_{j<D2/2} (L'-2 D1-2j) / D2!].
double partition_count(double slots, std::int64_t D, std::int64_t paired_modes);

/// Same count from choosing D2/2 complete momentum pairs and D1 lone modes
/// among the L'/2 pairs {k, -k}.
double partition_count_combinatorial(double slots, std::int64_t D,
                                     std::int64_t paired_modes);

double partition_count(double slots, std::int64_t D, std::int64_t paired_modes,
                       PartitionCounting counting);

/// Normalized average linear entropy of D-mode blocks, clamped to [0, 1].
/// The block-type weights are renormalized over the types that fit in the
/// sector, which only matters for odd or non-integral L - N_s and for the
/// printed counting.
double q_measure(const QParams& p);

}  // namespace etapair
