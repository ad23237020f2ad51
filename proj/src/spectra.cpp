#include "etapair/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "etapair/numerics.hpp"

namespace etapair {

PairSector::PairSector(double slots_, double pairs_) : slots(slots_), pairs(pairs_) {
  if (!(slots >= 0.0) || !std::isfinite(slots))
    throw std::domain_error("PairSector: slot count must be finite and >= 0");
  if (!(pairs >= 0.0 && pairs <= slots))
    throw std::domain_error("PairSector: pair count outside [0, slots]");
}

bool PairSector::exact() const {
  return is_integral(slots) && is_integral(pairs) &&
         slots <= static_cast<double>(kExactBinomialLimit);
}

Spectrum::Spectrum(std::vector<SpectrumEntry> entries) {
  entries_.reserve(entries.size());
  for (const auto& e : entries) {
    if (e.multiplicity == 0) continue;
    if (e.eigenvalue < -1e-14)
      throw std::domain_error("Spectrum: negative eigenvalue");
    if (std::abs(e.eigenvalue) < kEigenvalueFlush) continue;
    entries_.push_back({std::max(e.eigenvalue, 0.0), e.multiplicity});
  }
}

double Spectrum::trace() const {
  CompensatedSum s;
  for (const auto& e : entries_) s += static_cast<double>(e.multiplicity) * e.eigenvalue;
  return s.value();
}

double Spectrum::purity() const {
  CompensatedSum s;
  for (const auto& e : entries_)
    s += static_cast<double>(e.multiplicity) * e.eigenvalue * e.eigenvalue;
  return s.value();
}

std::uint64_t Spectrum::rank() const {
  std::uint64_t r = 0;
  for (const auto& e : entries_) r += e.multiplicity;
  return r;
}

std::vector<double> Spectrum::expanded(std::uint64_t dimension) const {
  const std::uint64_t r = rank();
  if (r > (1ULL << 26)) throw std::length_error("Spectrum::expanded: rank too large");
  std::vector<double> out;
  out.reserve(std::max(r, dimension));
  for (const auto& e : entries_) out.insert(out.end(), e.multiplicity, e.eigenvalue);
  if (dimension > r) out.resize(dimension, 0.0);
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

namespace {

void check_block(const PairSector& sector, const BlockSpec& block) {
  if (block.lone_modes < 0 || block.paired_pairs < 0)
    throw std::domain_error("BlockSpec: negative mode counts");
  if (static_cast<double>(block.touched_slots()) > sector.slots)
    throw std::domain_error("block touches more slots than the sector holds");
}

// Eigenvalues lambda(M, alpha) of a block, M lone half-slots occupied and
// alpha whole slots occupied. Exact integers for small integral sectors,
// otherwise falling factorials in log space:
//   C(L'-s, N-j) / C(L', N) = (N)_j (L'-N)_{s-j} / (L')_s,  j = M + alpha.
class BlockEigenvalues {
 public:
  BlockEigenvalues(const PairSector& sector, const BlockSpec& block)
      : sector_(sector),
        half_slots_(2 * block.lone_modes),
        whole_slots_(block.paired_modes()),
        touched_(block.touched_slots()),
        exact_(sector.exact()) {
    check_block(sector, block);
    if (exact_) {
      L_ = static_cast<std::int64_t>(sector.slots);
      N_ = static_cast<std::int64_t>(sector.pairs);
      norm_ = static_cast<long double>(exact_binomial(L_, N_));
      return;
    }
    // Prefix falling factorials (x)_k for k = 0..touched.
    auto prefix = [&](double x) {
      std::vector<LogWeight> ff(static_cast<std::size_t>(touched_) + 1);
      ff[0] = LogWeight::one();
      for (std::int64_t k = 0; k < touched_; ++k) {
        const double f = x - static_cast<double>(k);
        ff[k + 1] = f > 0.0 ? ff[k] * LogWeight{std::log(f), false} : LogWeight::zero();
      }
      return ff;
    };
    ff_pairs_ = prefix(sector.pairs);
    ff_holes_ = prefix(sector.slots - sector.pairs);
    const auto ff_slots = prefix(sector.slots);
    log_norm_ = ff_slots.back();
  }

  double operator()(std::int64_t M, std::int64_t alpha) const {
    const std::int64_t j = M + alpha;
    if (exact_) {
      const std::uint64_t c = exact_binomial(whole_slots_, alpha);
      const std::uint64_t r = exact_binomial(L_ - touched_, N_ - j);
      const auto num = static_cast<unsigned __int128>(c) * r;
      return static_cast<double>(static_cast<long double>(num) / norm_);
    }
    return log_at(M, alpha).value();
  }

  LogWeight log_at(std::int64_t M, std::int64_t alpha) const {
    if (exact_) {
      const double v = (*this)(M, alpha);
      return v > 0.0 ? LogWeight{std::log(v), false} : LogWeight::zero();
    }
    const std::int64_t j = M + alpha;
    return log_binomial(whole_slots_, alpha) * ff_pairs_[j] *
           ff_holes_[touched_ - j] / log_norm_;
  }

  bool exact() const { return exact_; }
  std::int64_t half_slots() const { return half_slots_; }
  std::int64_t whole_slots() const { return whole_slots_; }

 private:
  PairSector sector_;
  std::int64_t half_slots_;
  std::int64_t whole_slots_;
  std::int64_t touched_;
  bool exact_;
  std::int64_t L_ = 0;
  std::int64_t N_ = 0;
  long double norm_ = 1.0L;
  std::vector<LogWeight> ff_pairs_;
  std::vector<LogWeight> ff_holes_;
  LogWeight log_norm_;
};

// Non-integral sectors are renormalized: the falling-factorial continuation
// is cut at zero, which perturbs the trace slightly between integers.
Spectrum normalized(std::vector<SpectrumEntry> entries, bool exact) {
  if (!exact) {
    CompensatedSum t;
    for (const auto& e : entries) t += static_cast<double>(e.multiplicity) * e.eigenvalue;
    const double trace = t.value();
    if (trace > 0.0)
      for (auto& e : entries) e.eigenvalue /= trace;
  }
  return Spectrum(std::move(entries));
}

}  // namespace

Spectrum single_mode_spectrum_tdl(double a) {
  return mixed_block_spectrum_tdl(a, BlockSpec{1, 0});
}

Spectrum paired_block_spectrum(const PairSector& sector, std::int64_t inside_slots) {
  if (inside_slots < 0 || inside_slots % 2 != 0)
    throw std::domain_error("paired_block_spectrum: slot count must be even and >= 0");
  return mixed_block_spectrum(sector, BlockSpec{0, inside_slots / 2});
}

Spectrum open_block_spectrum(const PairSector& sector, std::int64_t lone_modes) {
  return mixed_block_spectrum(sector, BlockSpec{lone_modes, 0});
}

Spectrum mixed_block_spectrum(const PairSector& sector, const BlockSpec& block) {
  if (block.lone_modes > kMaxSpectrumLoneModes)
    throw std::domain_error("mixed_block_spectrum: too many lone modes for 64-bit multiplicities");
  const BlockEigenvalues lambda(sector, block);
  std::vector<SpectrumEntry> entries;
  for (std::int64_t M = 0; M <= lambda.half_slots(); ++M) {
    const std::uint64_t mult = exact_binomial(lambda.half_slots(), M);
    for (std::int64_t alpha = 0; alpha <= lambda.whole_slots(); ++alpha) {
      const double v = lambda(M, alpha);
      if (v > 0.0) entries.push_back({v, mult});
    }
  }
  return normalized(std::move(entries), lambda.exact());
}

Spectrum mixed_block_spectrum_tdl(double a, const BlockSpec& block) {
  if (!(a >= 0.0 && a <= 1.0))
    throw std::domain_error("mixed_block_spectrum_tdl: a must lie in [0, 1]");
  if (block.lone_modes < 0 || block.paired_pairs < 0)
    throw std::domain_error("BlockSpec: negative mode counts");
  if (block.lone_modes > kMaxSpectrumLoneModes)
    throw std::domain_error("mixed_block_spectrum_tdl: too many lone modes");
  const std::int64_t half = 2 * block.lone_modes;
  const std::int64_t whole = block.paired_modes();
  const std::int64_t s = half + whole;
  const LogWeight log_a = a > 0.0 ? LogWeight{std::log(a), false} : LogWeight::zero();
  const LogWeight log_b = a < 1.0 ? LogWeight{std::log1p(-a), false} : LogWeight::zero();
  auto power = [](const LogWeight& base, std::int64_t k) {
    if (k == 0) return LogWeight::one();
    if (base.is_zero) return LogWeight::zero();
    return LogWeight{base.log_value * static_cast<double>(k), false};
  };

  std::vector<SpectrumEntry> entries;
  for (std::int64_t M = 0; M <= half; ++M) {
    const std::uint64_t mult = exact_binomial(half, M);
    for (std::int64_t alpha = 0; alpha <= whole; ++alpha) {
      const std::int64_t j = M + alpha;
      const double v =
          (log_binomial(whole, alpha) * power(log_a, j) * power(log_b, s - j)).value();
      if (v > 0.0) entries.push_back({v, mult});
    }
  }
  return Spectrum(std::move(entries));
}

double mixed_block_purity(const PairSector& sector, const BlockSpec& block) {
  const BlockEigenvalues lambda(sector, block);
  CompensatedSum trace;
  CompensatedSum purity;
  for (std::int64_t M = 0; M <= lambda.half_slots(); ++M) {
    const LogWeight mult = log_binomial(lambda.half_slots(), M);
    for (std::int64_t alpha = 0; alpha <= lambda.whole_slots(); ++alpha) {
      const LogWeight v = lambda.log_at(M, alpha);
      trace += (mult * v).value();
      purity += (mult * v * v).value();
    }
  }
  if (lambda.exact()) return purity.value();
  const double t = trace.value();
  return purity.value() / (t * t);
}

}  // namespace etapair
