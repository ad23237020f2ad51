#include "etapair/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "etapair/numerics.hpp"
#include "etapair/qmeasure.hpp"
#include "etapair/spectra.hpp"

namespace etapair::oracle {

namespace {

constexpr std::uint64_t bit(int i) { return std::uint64_t{1} << i; }

int down_orbital(const OracleState& s, int mode) {
  (void)s;
  return 2 * mode;
}
int up_orbital(const OracleState& s, int mode) { return 2 * s.partner(mode) + 1; }

std::uint64_t orbital_occupation(std::uint32_t config) {
  std::uint64_t occ = 0;
  for (std::uint32_t c = config; c != 0; c &= c - 1) {
    const int j = std::countr_zero(c);
    occ |= bit(2 * j) | bit(2 * j + 1);
  }
  return occ;
}

}  // namespace

OracleState::OracleState(int slots, int pairs, std::uint32_t gauge_flips)
    : slots_(slots), pairs_(pairs) {
  if (slots < 2 || slots % 2 != 0)
    throw std::domain_error("OracleState: slot count must be even and >= 2");
  if (slots > kMaxSlots)
    throw std::length_error("OracleState: slot count above 24 is not supported");
  if (pairs < 0 || pairs > slots)
    throw std::domain_error("OracleState: pair count outside [0, slots]");

  const auto count = exact_binomial(slots, pairs);
  const double amp = 1.0 / std::sqrt(static_cast<double>(count));
  configs_.reserve(count);
  amplitudes_.reserve(count);
  // Weight-N_d bitstrings in increasing order (Gosper's hack).
  if (pairs == 0) {
    configs_.push_back(0);
  } else {
    std::uint32_t c = (std::uint32_t{1} << pairs) - 1;
    const std::uint32_t limit = std::uint32_t{1} << slots;
    while (c < limit) {
      configs_.push_back(c);
      const std::uint32_t t = c & (~c + 1);
      const std::uint32_t r = c + t;
      c = (((r ^ c) >> 2) / t) | r;
    }
  }
  for (const auto c : configs_) {
    const bool flip = std::popcount(c & gauge_flips) % 2 != 0;
    amplitudes_.push_back(flip ? -amp : amp);
  }
}

double OracleState::momentum(int mode) const {
  return std::numbers::pi * (2.0 * mode + 1.0 - slots_) / slots_;
}

double OracleState::norm_squared() const {
  CompensatedSum s;
  for (const double a : amplitudes_) s += a * a;
  return s.value();
}

OracleState build_state(int slots, int pairs) { return OracleState(slots, pairs); }

std::string RdmMatrix::basis_label(std::size_t index) const {
  static constexpr const char* kLocal[] = {"0", "u", "d", "ud"};
  std::string out;
  const std::size_t D = modes.size();
  for (std::size_t i = 0; i < D; ++i) {
    const std::size_t digit = (index >> (2 * (D - 1 - i))) & 3U;
    if (i) out += ',';
    out += kLocal[digit];
  }
  return out;
}

std::vector<double> RdmMatrix::eigenvalues() const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(rho, Eigen::EigenvaluesOnly);
  std::vector<double> ev(solver.eigenvalues().data(),
                         solver.eigenvalues().data() + solver.eigenvalues().size());
  std::sort(ev.begin(), ev.end(), std::greater<>());
  return ev;
}

double RdmMatrix::purity() const { return rho.cwiseProduct(rho).sum(); }

RdmMatrix exact_rdm(const OracleState& state, const std::vector<int>& modes,
                    OrbitalOrder order) {
  const int D = static_cast<int>(modes.size());
  if (D == 0) throw std::domain_error("exact_rdm: empty mode list");
  if (D > 5) throw std::length_error("exact_rdm: at most 5 modes");
  for (int i = 0; i < D; ++i) {
    if (modes[i] < 0 || modes[i] >= state.slots())
      throw std::domain_error("exact_rdm: mode index out of range");
    for (int k = 0; k < i; ++k)
      if (modes[k] == modes[i]) throw std::domain_error("exact_rdm: repeated mode");
  }

  // Subsystem orbitals in target order.
  std::vector<int> sub_orbitals;
  for (const int m : modes) {
    if (order == OrbitalOrder::down_first) {
      sub_orbitals.push_back(down_orbital(state, m));
      sub_orbitals.push_back(up_orbital(state, m));
    } else {
      sub_orbitals.push_back(up_orbital(state, m));
      sub_orbitals.push_back(down_orbital(state, m));
    }
  }
  std::uint64_t sub_mask = 0;
  for (const int o : sub_orbitals) sub_mask |= bit(o);

  struct Term {
    std::uint64_t env;
    std::uint32_t index;
    double value;
  };
  std::vector<Term> terms;
  terms.reserve(state.configurations().size());

  // eta_j^dagger = a^dagger_{2j+1} a^dagger_{2j} = -(canonical order), once per pair.
  const double pair_sign = state.pairs() % 2 == 0 ? 1.0 : -1.0;

  const auto& configs = state.configurations();
  const auto& amps = state.amplitudes();
  for (std::size_t n = 0; n < configs.size(); ++n) {
    const std::uint64_t occ = orbital_occupation(configs[n]);
    const std::uint64_t env = occ & ~sub_mask;

    int inversions = 0;
    for (std::size_t p = 0; p < sub_orbitals.size(); ++p) {
      const int o = sub_orbitals[p];
      if (!(occ & bit(o))) continue;
      // environment orbitals created before o in canonical order
      inversions += std::popcount(env & (bit(o) - 1));
      // subsystem orbitals placed after o in target order but before it canonically
      for (std::size_t q = p + 1; q < sub_orbitals.size(); ++q) {
        const int o2 = sub_orbitals[q];
        if ((occ & bit(o2)) && o2 < o) ++inversions;
      }
    }

    std::uint32_t index = 0;
    for (int i = 0; i < D; ++i) {
      const int up = (occ & bit(up_orbital(state, modes[i]))) ? 1 : 0;
      const int down = (occ & bit(down_orbital(state, modes[i]))) ? 1 : 0;
      index = (index << 2) | static_cast<std::uint32_t>(up + 2 * down);
    }
    const double sign = (inversions % 2 == 0 ? 1.0 : -1.0) * pair_sign;
    terms.push_back({env, index, sign * amps[n]});
  }

  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) {
    return a.env != b.env ? a.env < b.env : a.index < b.index;
  });

  const Eigen::Index dim = Eigen::Index{1} << (2 * D);
  RdmMatrix out{modes, Eigen::MatrixXd::Zero(dim, dim)};
  for (std::size_t begin = 0; begin < terms.size();) {
    std::size_t end = begin;
    while (end < terms.size() && terms[end].env == terms[begin].env) ++end;
    for (std::size_t i = begin; i < end; ++i)
      for (std::size_t k = begin; k < end; ++k)
        out.rho(terms[i].index, terms[k].index) += terms[i].value * terms[k].value;
    begin = end;
  }
  return out;
}

double exact_negativity(const RdmMatrix& rdm, const std::vector<int>& transposed) {
  const int D = static_cast<int>(rdm.modes.size());
  if (D < 2) throw std::domain_error("exact_negativity: need at least two modes");
  std::uint32_t digit_mask = 0;
  for (const int pos : transposed) {
    if (pos < 0 || pos >= D) throw std::domain_error("exact_negativity: bad position");
    digit_mask |= 3U << (2 * (D - 1 - pos));
  }
  const Eigen::Index dim = rdm.rho.rows();
  Eigen::MatrixXd pt(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r) {
    for (Eigen::Index c = 0; c < dim; ++c) {
      const auto ur = static_cast<std::uint32_t>(r);
      const auto uc = static_cast<std::uint32_t>(c);
      const std::uint32_t r2 = (ur & ~digit_mask) | (uc & digit_mask);
      const std::uint32_t c2 = (uc & ~digit_mask) | (ur & digit_mask);
      pt(r, c) = rdm.rho(r2, c2);
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(pt, Eigen::EigenvaluesOnly);
  double neg = 0.0;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i)
    if (solver.eigenvalues()(i) < 0.0) neg -= solver.eigenvalues()(i);
  return neg;
}

double exact_entropy(const RdmMatrix& rdm) {
  CompensatedSum s;
  for (const double l : rdm.eigenvalues())
    if (l > 0.0) s += -l * std::log2(l);
  return std::max(s.value(), 0.0);
}

double exact_q(const OracleState& state, int D) {
  const int L = state.slots();
  if (D < 1 || D > L) throw std::domain_error("exact_q: block size outside [1, L']");
  if (exact_binomial(L, D) > kMaxQBlocks)
    throw std::length_error("exact_q: too many blocks to enumerate");

  std::vector<int> block(D);
  for (int i = 0; i < D; ++i) block[i] = i;
  CompensatedSum purity;
  std::uint64_t count = 0;
  while (true) {
    purity += exact_rdm(state, block).purity();
    ++count;
    int i = D - 1;
    while (i >= 0 && block[i] == L - D + i) --i;
    if (i < 0) break;
    ++block[i];
    for (int k = i + 1; k < D; ++k) block[k] = block[k - 1] + 1;
  }
  const double mean = purity.value() / static_cast<double>(count);
  const double norm = 1.0 / (1.0 - std::pow(4.0, -D));
  return norm * (1.0 - mean);
}

}  // namespace etapair::oracle

namespace etapair::oracle {

namespace {

// Complete pairs {j, partner(j)} for j < P, then lone modes P..P+D1-1.
std::vector<int> block_modes(const OracleState& s, int lone, int full_pairs) {
  std::vector<int> modes;
  for (int j = 0; j < full_pairs; ++j) {
    modes.push_back(j);
    modes.push_back(s.partner(j));
  }
  for (int j = 0; j < lone; ++j) modes.push_back(full_pairs + j);
  return modes;
}

}  // namespace

std::vector<Comparison> verify_closed_forms(const VerifyOptions& opts) {
  std::vector<Comparison> out;
  for (const int L : opts.slot_counts) {
    for (int Nd = 0; Nd <= L; ++Nd) {
      const OracleState state = build_state(L, Nd);
      const PairSector sector(L, Nd);
      for (int P = 0; 2 * P <= opts.max_touched_slots; ++P) {
        for (int D1 = 0; 2 * D1 + 2 * P <= opts.max_touched_slots; ++D1) {
          if (D1 + P == 0 || D1 + P > L / 2) continue;
          const BlockSpec block{D1, P};
          const RdmMatrix rdm = exact_rdm(state, block_modes(state, D1, P));

          const auto ev = rdm.eigenvalues();
          const auto closed = mixed_block_spectrum(sector, block).expanded(ev.size());
          double dev = 0.0;
          for (std::size_t i = 0; i < ev.size(); ++i)
            dev = std::max(dev, std::abs(ev[i] - closed[i]));
          out.push_back({"spectrum", L, Nd, D1, P, D1 + 2 * P, dev, opts.spectrum_tol});

          double purity = 0.0;
          std::string name = "purity_mixed";
          if (P == 0) {
            purity = purity_open(sector, D1);
            name = "purity_open";
          } else if (D1 == 0) {
            purity = purity_paired(sector, 2 * P);
            name = "purity_paired";
          } else {
            purity = mixed_block_purity(sector, block);
          }
          out.push_back({name, L, Nd, D1, P, D1 + 2 * P, std::abs(rdm.purity() - purity),
                         opts.purity_tol});
        }
      }
      for (int D = 1; D <= std::min(opts.max_q_block, L); ++D) {
        QParams q;
        q.L = L;
        q.N_s = 0.0;
        q.N_d = Nd;
        q.D = D;
        q.mode = QMode::exact_spectrum;
        const double dev = std::abs(exact_q(state, D) - q_measure(q));
        out.push_back({"q_measure", L, Nd, 0, 0, D, dev, opts.q_tol});
      }
    }
  }
  return out;
}

}  // namespace etapair::oracle
