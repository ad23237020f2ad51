#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace etapair::oracle {

/// Exact finite-size eta-pairing state (eta^dagger)^N_d |vac> over L' pair
/// slots, stored as amplitudes on slot-occupation bitstrings.
///
/// Momentum grid: k_j = pi (2j + 1 - L') / L' for j = 0..L'-1, so L' is even,
/// there are no self-conjugate momenta, and the partner of mode j (the mode
/// at -k_j) is L' - 1 - j. Slot j occupies orbitals (k_j, down) and
/// (-k_j, up). Basis states are the ordered product of eta_j^dagger over
/// ascending slot index acting on the vacuum.
class OracleState {
 public:
  static constexpr int kMaxSlots = 24;

  /// `gauge_flips` negates eta_j^dagger for every set bit j.
  OracleState(int slots, int pairs, std::uint32_t gauge_flips = 0);

  int slots() const { return slots_; }
  int pairs() const { return pairs_; }
  int partner(int mode) const { return slots_ - 1 - mode; }
  double momentum(int mode) const;

  const std::vector<std::uint32_t>& configurations() const { return configs_; }
  const std::vector<double>& amplitudes() const { return amplitudes_; }
  double norm_squared() const;

 private:
  int slots_;
  int pairs_;
  std::vector<std::uint32_t> configs_;
  std::vector<double> amplitudes_;
};

/// Builds the canonical-gauge state; all amplitudes are 1/sqrt(C(L', N_d)).
OracleState build_state(int slots, int pairs);

/// Ordering of the two orbitals of a mode inside the subsystem.
enum class OrbitalOrder { down_first, up_first };

/// Reduced density matrix over a list of modes, each a 4-dimensional local
/// space {0, up, down, up-down}. The basis index is sum_i local_i 4^(D-1-i)
/// with local = n_up + 2 n_down, i.e. the first listed mode is the most
/// significant digit.
struct RdmMatrix {
  std::vector<int> modes;
  Eigen::MatrixXd rho;

  std::size_t dimension() const { return static_cast<std::size_t>(rho.rows()); }
  std::string basis_label(std::size_t index) const;
  /// Eigenvalues sorted descending.
  std::vector<double> eigenvalues() const;
  double trace() const { return rho.trace(); }
  double purity() const;
};

/// RDM of `modes`, applying fermionic reordering signs when the occupied
/// orbitals are permuted into (subsystem, environment) order.
RdmMatrix exact_rdm(const OracleState& state, const std::vector<int>& modes,
                    OrbitalOrder order = OrbitalOrder::down_first);

/// Negativity of the qudit partial transpose over the modes at positions
/// `transposed` (indices into rdm.modes): sum of |negative eigenvalues|.
double exact_negativity(const RdmMatrix& rdm, const std::vector<int>& transposed);

/// von Neumann entropy in bits of an RDM, 0 log 0 := 0.
double exact_entropy(const RdmMatrix& rdm);

/// Maximum number of blocks exact_q will enumerate.
inline constexpr std::uint64_t kMaxQBlocks = 100000;

/// (4^D / (4^D - 1)) (1 - mean Tr rho^2) over all C(L', D) blocks of D modes.
double exact_q(const OracleState& state, int D);

}  // namespace etapair::oracle

namespace etapair::oracle {

/// One oracle-vs-closed-form comparison.
struct Comparison {
  std::string check;
  int slots = 0;
  int pairs = 0;
  int lone_modes = 0;
  int full_pairs = 0;
  int D = 0;
  double max_deviation = 0.0;
  double tolerance = 0.0;

  bool passed() const { return max_deviation <= tolerance; }
};

struct VerifyOptions {
  std::vector<int> slot_counts = {4, 6, 8, 10};
  /// Blocks with 2 D1 + D2 up to this many touched slots.
  int max_touched_slots = 4;
  int max_q_block = 4;
  double spectrum_tol = 1e-12;
  double purity_tol = 1e-12;
  double q_tol = 1e-10;
};

/// Spectra, purities and Q of every block type against the exact state,
/// for every pair count 0..L'.
std::vector<Comparison> verify_closed_forms(const VerifyOptions& opts = {});

}  // namespace etapair::oracle
