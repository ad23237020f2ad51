#pragma once

#include "etapair/spectra.hpp"

namespace etapair {

/// Unit of entropies and mutual information. Closed forms are evaluated in
/// bits and converted on output.
enum class LogBase { bits, nats };

enum class MeasureKind { entropy, mutual_info, negativity, odlro, purity };

struct MeasureValue {
  double value = 0.0;
  MeasureKind kind = MeasureKind::entropy;
};

/// Converts a value in bits to `base`.
double in_base(double bits, LogBase base);

/// -sum mult * lambda * log(lambda), with 0 log 0 := 0.
double vn_entropy(const Spectrum& s, LogBase base = LogBase::bits);

/// Entropy of one momentum mode in the thermodynamic limit, 2 h2(a).
double single_mode_entropy(double a, LogBase base = LogBase::bits);

/// How a quantity with two available closed forms is evaluated.
///   printed:  the published expression taken verbatim
///   spectrum: derived from the block spectrum of the slot picture
enum class FormulaPath { printed, spectrum };

/// Mutual information between k and -k in the thermodynamic limit.
///
/// printed gives S_k + 2a(1-a); spectrum gives 2 S_k - S_{k,-k} with
/// S_{k,-k} from the paired-block spectrum. The two agree identically.
double pair_mutual_information(double a, FormulaPath path = FormulaPath::spectrum,
                               LogBase base = LogBase::bits);

/// Negativity between k and -k.
///
/// printed: a(1-a)/3, the normalization under which odlro() equals
///   3 N (1-n_s)^2.
/// spectrum: a(1-a), the plain partial-transpose negativity of the
///   thermodynamic-limit paired-block state (what the oracle converges to).
double pair_negativity(double a, FormulaPath path = FormulaPath::printed);

/// Entropy of the paired modes (-k, k).
///
/// printed: 2 h2(a) + a(1-a) in bits, verbatim.
/// spectrum: entropy of {(1-a)^2, 2a(1-a), a^2} = 2 h2(a) - 2a(1-a) bits.
/// The exact finite-size state selects the spectrum form.
double paired_modes_entropy(double a, FormulaPath path = FormulaPath::spectrum,
                            LogBase base = LogBase::bits);

struct TwoPairCorrelations {
  double mutual_information = 0.0;
  /// The two-pair reduced state is a dephased product state in the
  /// thermodynamic limit, so its negativity vanishes.
  double negativity = 0.0;
};

/// Mutual information between two distinct (-k, k) pairs.
///
/// printed: 2a(1-a)[2 + a(1-a)(3 log2 3 - 5)].
/// spectrum: 2 S_pair - S_{two pairs} from the thermodynamic-limit spectra.
TwoPairCorrelations two_pair_mutual_information(double a,
                                                FormulaPath path = FormulaPath::printed,
                                                LogBase base = LogBase::bits);

/// Off-diagonal long-range order n_d (1 - n_s - n_d).
double odlro(double n_s, double n_d);

/// von Neumann entropy of a finite-size block.
double block_entropy(const PairSector& sector, const BlockSpec& block,
                     LogBase base = LogBase::bits);

/// von Neumann entropy of a block in the thermodynamic limit.
double block_entropy_tdl(double a, const BlockSpec& block,
                         LogBase base = LogBase::bits);

}  // namespace etapair
