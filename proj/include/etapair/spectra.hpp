#pragma once

#include <cstdint>
#include <vector>

namespace etapair {

/// The correlated sector of the ground state: (eta^dagger)^pairs |vac> over
/// `slots` = L - N_s pair slots.
///
/// Slot j occupies orbital (k_j, down) and orbital (-k_j, up); the state is
/// the uniform superposition of all `pairs`-subsets of slots. Non-integral
/// values are accepted and interpolate smoothly between integer sizes.
struct PairSector {
  double slots = 0.0;
  double pairs = 0.0;

  PairSector() = default;
  PairSector(double slots, double pairs);

  bool exact() const;  ///< integral and small enough for exact integers
  double occupation() const { return slots > 0.0 ? pairs / slots : 0.0; }
};

/// Composition of a block of momentum modes.
///
/// A lone mode has its partner -k outside the block and touches two slots
/// halfway; a complete (-k, k) pair inside the block holds two whole slots.
struct BlockSpec {
  std::int64_t lone_modes = 0;    ///< D1
  std::int64_t paired_pairs = 0;  ///< D2 / 2

  std::int64_t paired_modes() const { return 2 * paired_pairs; }  ///< D2
  std::int64_t modes() const { return lone_modes + paired_modes(); }
  std::int64_t touched_slots() const { return 2 * lone_modes + paired_modes(); }
};

struct SpectrumEntry {
  double eigenvalue = 0.0;
  std::uint64_t multiplicity = 1;
};

/// Diagonal form of a reduced density matrix as (eigenvalue, multiplicity)
/// pairs. Only the support is stored; zero eigenvalues are dropped.
class Spectrum {
 public:
  Spectrum() = default;
  explicit Spectrum(std::vector<SpectrumEntry> entries);

  const std::vector<SpectrumEntry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }

  double trace() const;   ///< sum of multiplicity * eigenvalue
  double purity() const;  ///< sum of multiplicity * eigenvalue^2
  std::uint64_t rank() const;

  /// Eigenvalues expanded by multiplicity, sorted descending, zero-padded to
  /// `dimension` when that exceeds the rank.
  std::vector<double> expanded(std::uint64_t dimension = 0) const;

 private:
  std::vector<SpectrumEntry> entries_;
};

/// Eigenvalues below this magnitude are flushed to exact zero.
inline constexpr double kEigenvalueFlush = 1e-300;

/// Largest lone-mode count for which multiplicities C(2 D1, M) fit 64 bits.
inline constexpr std::int64_t kMaxSpectrumLoneModes = 32;

/// {(1-a)^2, a(1-a) x2, a^2}: one lone mode in the thermodynamic limit.
Spectrum single_mode_spectrum_tdl(double a);

/// P whole slots inside the block (P/2 complete pairs): nondegenerate
/// eigenvalues C(P, alpha) C(L'-P, N_d-alpha) / C(L', N_d).
Spectrum paired_block_spectrum(const PairSector& sector, std::int64_t inside_slots);

/// D1 lone modes: eigenvalue C(L'-2 D1, N_d - M) / C(L', N_d) with
/// multiplicity C(2 D1, M).
Spectrum open_block_spectrum(const PairSector& sector, std::int64_t lone_modes);

/// General block: eigenvalue C(D2, alpha) C(L'-2 D1-D2, N_d-M-alpha) / C(L', N_d)
/// with multiplicity C(2 D1, M).
Spectrum mixed_block_spectrum(const PairSector& sector, const BlockSpec& block);

/// Thermodynamic limit of mixed_block_spectrum at slot occupation a:
/// eigenvalue C(D2, alpha) a^(M+alpha) (1-a)^(2 D1 + D2 - M - alpha).
Spectrum mixed_block_spectrum_tdl(double a, const BlockSpec& block);

/// Tr rho^2 of the general block evaluated in log space without
/// materializing multiplicities (no limit on D1).
double mixed_block_purity(const PairSector& sector, const BlockSpec& block);

}  // namespace etapair
