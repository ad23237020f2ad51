#include "etapair/scan.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace etapair {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct LinearFit {
  double intercept = 0.0;
  double slope = 0.0;
  double r2 = 0.0;
  double rms = 0.0;
};

LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  LinearFit f;
  f.slope = sxx > 0.0 ? sxy / sxx : 0.0;
  f.intercept = my - f.slope * mx;
  double rss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = y[i] - (f.intercept + f.slope * x[i]);
    rss += r * r;
  }
  f.r2 = syy > 0.0 ? 1.0 - rss / syy : 1.0;
  f.rms = std::sqrt(rss / static_cast<double>(n));
  return f;
}

struct SideAnalysis {
  std::size_t count = 0;
  bool bounded = false;
  double limit = 0.0;
  double noise = 0.0;
  LinearFit power;  // ln|d1| vs ln delta
  LinearFit log;    // |d1| vs ln delta
};

SideAnalysis analyze_side(const std::vector<double>& delta, const std::vector<double>& d1,
                          const WindowPolicy& policy) {
  SideAnalysis s;
  s.count = delta.size();
  const LinearFit lin = fit_line(delta, d1);
  double scale = 0.0;
  for (const double v : d1) scale = std::max(scale, std::abs(v));
  s.limit = lin.intercept;
  s.noise = lin.rms;
  s.bounded = lin.rms <= std::max(policy.bounded_tolerance * scale, policy.noise_floor);
  if (s.bounded) return s;

  std::vector<double> log_delta(delta.size()), g(delta.size()), log_g(delta.size());
  for (std::size_t i = 0; i < delta.size(); ++i) {
    log_delta[i] = std::log(delta[i]);
    g[i] = std::abs(d1[i]);
    log_g[i] = std::log(std::max(g[i], std::numeric_limits<double>::min()));
  }
  s.power = fit_line(log_delta, log_g);
  s.log = fit_line(log_delta, g);
  return s;
}

}  // namespace

// ---------------------------------------------------------------------------
// measures along the phase diagram

std::string_view measure_name(Measure m) {
  switch (m) {
    case Measure::a: return "a";
    case Measure::single_entropy: return "S_single";
    case Measure::pair_entropy: return "S_pair";
    case Measure::pair_mutual_info: return "I_pair";
    case Measure::pair_negativity: return "N_pair";
    case Measure::two_pair_mutual_info: return "I_two_pair";
    case Measure::odlro: return "odlro";
    case Measure::energy: return "energy";
  }
  return "?";
}

const std::vector<Measure>& all_measures() {
  static const std::vector<Measure> kAll = {
      Measure::a,          Measure::single_entropy,       Measure::pair_entropy,
      Measure::pair_mutual_info, Measure::pair_negativity, Measure::two_pair_mutual_info,
      Measure::odlro,      Measure::energy};
  return kAll;
}

std::optional<Measure> parse_measure(std::string_view name) {
  for (const Measure m : all_measures())
    if (measure_name(m) == name) return m;
  return std::nullopt;
}

double evaluate_measure(Measure m, const PhasePoint& p, const MeasureOptions& opts) {
  const GroundStateParams g = ground_state(p);
  switch (m) {
    case Measure::a: return g.a;
    case Measure::single_entropy: return single_mode_entropy(g.a, opts.base);
    case Measure::pair_entropy:
      return paired_modes_entropy(g.a, opts.pair_entropy_path, opts.base);
    case Measure::pair_mutual_info:
      return pair_mutual_information(g.a, FormulaPath::spectrum, opts.base);
    case Measure::pair_negativity: return pair_negativity(g.a, opts.negativity_path);
    case Measure::two_pair_mutual_info:
      return two_pair_mutual_information(g.a, FormulaPath::printed, opts.base)
          .mutual_information;
    case Measure::odlro: return odlro(g.n_s, g.n_d);
    case Measure::energy: return energy_density(g.n_s, g.n_d, p.u);
  }
  return kNaN;
}

// ---------------------------------------------------------------------------
// sweeps

PhasePoint SweepAxis::at(double x) const {
  switch (kind) {
    case Kind::fixed_n: return {fixed, x};
    case Kind::fixed_u: return {x, fixed};
    case Kind::iso_correlation:
      return {x > -4.0 ? iso_correlation_curve(fixed, x) : 2.0 * fixed, x};
  }
  return {};
}

std::string_view SweepAxis::x_name() const { return kind == Kind::fixed_u ? "n" : "u"; }

void SweepAxis::validate_range(double x_min, double x_max) const {
  if (!std::isfinite(x_min) || !std::isfinite(x_max) || x_min > x_max)
    throw std::invalid_argument("sweep range must be finite with min <= max");
  switch (kind) {
    case Kind::fixed_n:
      if (!(fixed > 0.0 && fixed <= 1.0))
        throw std::invalid_argument("fixed n must lie in (0, 1]");
      break;
    case Kind::fixed_u:
      if (!std::isfinite(fixed)) throw std::invalid_argument("fixed u must be finite");
      if (x_max > 1.0) throw std::invalid_argument("n range crosses n = 1");
      if (x_min <= 0.0) throw std::invalid_argument("n range must stay above 0");
      break;
    case Kind::iso_correlation:
      if (!(fixed > 0.0 && fixed <= 0.5))
        throw std::invalid_argument("iso-correlation level a must lie in (0, 1/2]");
      if (x_max >= 4.0) throw std::invalid_argument("iso-correlation sweep requires u < 4");
      break;
  }
}

std::vector<double> SweepRange::points() const {
  if (!(step > 0.0)) throw std::invalid_argument("sweep step must be positive");
  if (max < min) throw std::invalid_argument("sweep range max < min");
  const auto n = static_cast<std::size_t>(std::floor((max - min) / step + 1e-9)) + 1;
  std::vector<double> xs(n);
  for (std::size_t i = 0; i < n; ++i) xs[i] = min + static_cast<double>(i) * step;
  return xs;
}

std::size_t Sweep::column(Measure m) const {
  const auto it = std::find(measures.begin(), measures.end(), m);
  if (it == measures.end()) throw std::invalid_argument("measure not recorded in sweep");
  return static_cast<std::size_t>(it - measures.begin());
}

Sweep sweep(const SweepAxis& axis, const SweepRange& range, std::vector<Measure> measures,
            const MeasureOptions& opts) {
  axis.validate_range(range.min, range.max);
  Sweep s{axis, std::move(measures), {}};
  for (const double x : range.points()) {
    ScanRecord r;
    r.x = x;
    r.point = axis.at(x);
    r.region = ground_state(r.point).region;
    r.values.reserve(s.measures.size());
    for (const Measure m : s.measures) r.values.push_back(evaluate_measure(m, r.point, opts));
    s.records.push_back(std::move(r));
  }
  return s;
}

Sweep numerical_derivative(Sweep s) {
  auto& rec = s.records;
  const std::size_t n = rec.size();
  if (n < 3) throw std::invalid_argument("numerical_derivative: need at least 3 records");
  const double h = rec[1].x - rec[0].x;
  for (std::size_t i = 1; i < n; ++i) {
    const double hi = rec[i].x - rec[i - 1].x;
    if (!(hi > 0.0) || std::abs(hi - h) > 1e-6 * std::abs(h))
      throw std::invalid_argument("numerical_derivative: records must have a uniform step");
  }
  const std::size_t cols = s.measures.size();
  for (auto& r : rec) r.d1.assign(cols, std::nullopt);

  auto same = [&](std::size_t i, std::size_t k) { return rec[i].region == rec[k].region; };
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (rec[i].region == Region::boundary) continue;
    const bool left = same(i, i - 1);
    const bool right = same(i, i + 1);
    for (std::size_t c = 0; c < cols; ++c) {
      const double f0 = rec[i].values[c];
      if (left && right) {
        rec[i].d1[c] = (rec[i + 1].values[c] - rec[i - 1].values[c]) / (2.0 * h);
      } else if (right) {
        if (i + 2 < n && same(i, i + 2)) {
          rec[i].d1[c] =
              (-3.0 * f0 + 4.0 * rec[i + 1].values[c] - rec[i + 2].values[c]) / (2.0 * h);
        } else {
          rec[i].d1[c] = (rec[i + 1].values[c] - f0) / h;
        }
      } else if (left) {
        if (i >= 2 && same(i, i - 2)) {
          rec[i].d1[c] =
              (3.0 * f0 - 4.0 * rec[i - 1].values[c] + rec[i - 2].values[c]) / (2.0 * h);
        } else {
          rec[i].d1[c] = (f0 - rec[i - 1].values[c]) / h;
        }
      }
    }
  }
  return s;
}

std::string_view to_string(ApproachSide s) {
  switch (s) {
    case ApproachSide::below: return "below";
    case ApproachSide::above: return "above";
    case ApproachSide::both: return "both";
  }
  return "?";
}

std::vector<DerivativeSample> refined_derivative_samples(const SweepAxis& axis, Measure m,
                                                         double x_c,
                                                         const RefinementPolicy& policy,
                                                         const MeasureOptions& opts) {
  if (!(policy.min_dist > 0.0 && policy.max_dist > policy.min_dist))
    throw std::invalid_argument("refinement window must satisfy 0 < min_dist < max_dist");
  if (policy.points_per_decade < 1 || !(policy.h > 0.0))
    throw std::invalid_argument("refinement needs h > 0 and points_per_decade >= 1");

  const double decades = std::log10(policy.max_dist / policy.min_dist);
  const auto count =
      static_cast<int>(std::ceil(decades * policy.points_per_decade - 1e-9)) + 1;
  std::vector<double> deltas(count);
  for (int i = 0; i < count; ++i)
    deltas[i] = policy.min_dist * std::pow(10.0, decades * i / (count - 1));

  auto f = [&](double x) { return evaluate_measure(m, axis.at(x), opts); };
  auto derivative_at = [&](double x, double delta) {
    const double h = std::min(policy.h, delta / 4.0);
    return (f(x + h) - f(x - h)) / (2.0 * h);
  };

  std::vector<DerivativeSample> out;
  auto feasible = [&](double x) {
    try {
      ground_state(axis.at(x));
      return true;
    } catch (const std::domain_error&) {
      return false;
    }
  };
  if (policy.sides != ApproachSide::above) {
    for (auto it = deltas.rbegin(); it != deltas.rend(); ++it) {
      const double x = x_c - *it;
      const double h = std::min(policy.h, *it / 4.0);
      if (feasible(x - h) && feasible(x + h)) out.push_back({x, derivative_at(x, *it)});
    }
  }
  if (policy.sides != ApproachSide::below) {
    for (const double d : deltas) {
      const double x = x_c + d;
      const double h = std::min(policy.h, d / 4.0);
      if (feasible(x - h) && feasible(x + h)) out.push_back({x, derivative_at(x, d)});
    }
  }
  return out;
}

std::vector<DerivativeSample> derivative_samples(const Sweep& s, Measure m) {
  const std::size_t c = s.column(m);
  std::vector<DerivativeSample> out;
  for (const auto& r : s.records)
    if (c < r.d1.size() && r.d1[c]) out.push_back({r.x, *r.d1[c]});
  return out;
}

// ---------------------------------------------------------------------------
// singularity classification

std::string_view to_string(SingularityClass c) {
  switch (c) {
    case SingularityClass::inverse_sqrt: return "inverse_sqrt";
    case SingularityClass::log_divergence: return "log_divergence";
    case SingularityClass::finite_jump: return "finite_jump";
    case SingularityClass::smooth: return "smooth";
    case SingularityClass::power_law: return "power_law";
  }
  return "?";
}

SingularityReport classify_singularity(std::span<const DerivativeSample> samples, double x_c,
                                       const WindowPolicy& policy) {
  std::vector<double> below_delta, below_d1, above_delta, above_d1;
  for (const auto& s : samples) {
    const double delta = std::abs(s.x - x_c);
    if (delta < policy.min_dist * (1.0 - 1e-9) || delta > policy.max_dist * (1.0 + 1e-9))
      continue;
    if (!std::isfinite(s.d1)) continue;
    if (s.x < x_c) {
      below_delta.push_back(delta);
      below_d1.push_back(s.d1);
    } else if (s.x > x_c) {
      above_delta.push_back(delta);
      above_d1.push_back(s.d1);
    }
  }
  const bool has_below = below_delta.size() >= policy.min_points;
  const bool has_above = above_delta.size() >= policy.min_points;
  if (!has_below && !has_above)
    throw std::invalid_argument(
        "classify_singularity: fewer than min_points samples in the fit window");

  std::optional<SideAnalysis> below, above;
  if (has_below) below = analyze_side(below_delta, below_d1, policy);
  if (has_above) above = analyze_side(above_delta, above_d1, policy);

  SingularityReport rep;
  rep.x_c = x_c;
  rep.fitted_exponent = kNaN;
  if (below && below->bounded) rep.limit_below = below->limit;
  if (above && above->bounded) rep.limit_above = above->limit;

  const SideAnalysis* divergent = nullptr;
  if (below && !below->bounded) {
    divergent = &*below;
    rep.side = ApproachSide::below;
  }
  if (above && !above->bounded && (!divergent || above->count > divergent->count)) {
    divergent = &*above;
    rep.side = ApproachSide::above;
  }

  if (divergent) {
    const double u_pow = 1.0 - divergent->power.r2;
    const double u_log = 1.0 - divergent->log.r2;
    rep.fitted_exponent = divergent->power.slope;
    const bool log_wins = u_log < (1.0 - policy.model_margin) * u_pow;
    const bool pow_wins = u_pow < (1.0 - policy.model_margin) * u_log;
    if (!log_wins && !pow_wins) rep.notes = "ambiguous";
    if (log_wins || (!pow_wins && u_log <= u_pow)) {
      rep.cls = SingularityClass::log_divergence;
      rep.fit_quality = divergent->log.r2;
    } else {
      rep.fit_quality = divergent->power.r2;
      rep.cls = std::abs(rep.fitted_exponent - policy.expected_exponent) <=
                        policy.exponent_tolerance
                    ? SingularityClass::inverse_sqrt
                    : SingularityClass::power_law;
    }
    return rep;
  }

  if (below && above) {
    rep.side = ApproachSide::both;
    const double noise = std::max({below->noise, above->noise, 1e-12});
    const double jump = std::abs(below->limit - above->limit);
    rep.cls = jump > 10.0 * noise ? SingularityClass::finite_jump : SingularityClass::smooth;
    rep.fit_quality = 1.0;
    return rep;
  }

  rep.side = below ? ApproachSide::below : ApproachSide::above;
  rep.cls = SingularityClass::smooth;
  rep.fit_quality = 1.0;
  rep.notes = "one-sided";
  return rep;
}

// ---------------------------------------------------------------------------
// phase diagram

double GridAxis::at(std::size_t i) const {
  if (count < 2) throw std::invalid_argument("grid axis needs at least 2 points");
  return min + (max - min) * static_cast<double>(i) / static_cast<double>(count - 1);
}

PhaseGrid phase_grid(const GridAxis& n_axis, const GridAxis& u_axis,
                     const std::vector<double>& a_levels) {
  if (n_axis.count < 2 || u_axis.count < 2)
    throw std::invalid_argument("phase_grid: resolution must be >= 2 per axis");
  if (!(n_axis.min > 0.0 && n_axis.max <= 1.0 && n_axis.min <= n_axis.max))
    throw std::invalid_argument("phase_grid: n range must lie in (0, 1]");
  if (!std::isfinite(u_axis.min) || !std::isfinite(u_axis.max) || u_axis.min > u_axis.max)
    throw std::invalid_argument("phase_grid: u range must be finite with min <= max");
  for (const double a : a_levels)
    if (!(a >= 0.0 && a <= 0.5))
      throw std::invalid_argument("phase_grid: contour levels must lie in [0, 1/2]");

  PhaseGrid grid{n_axis, u_axis, {}, {}};
  grid.cells.reserve(n_axis.count * u_axis.count);
  for (std::size_t i = 0; i < n_axis.count; ++i) {
    for (std::size_t j = 0; j < u_axis.count; ++j) {
      const PhasePoint p{n_axis.at(i), u_axis.at(j)};
      grid.cells.push_back({p.n, p.u, ground_state(p)});
    }
  }

  // a is nondecreasing in n at fixed u; take the last cell at or below the
  // level and interpolate towards the next one.
  for (const double level : a_levels) {
    for (std::size_t j = 0; j < u_axis.count; ++j) {
      for (std::size_t i = 0; i < n_axis.count; ++i) {
        const double ai = grid.cell(i, j).ground.a;
        if (ai > level) break;
        if (i + 1 == n_axis.count) {
          if (std::abs(ai - level) <= 1e-12)
            grid.contours.push_back({level, u_axis.at(j), n_axis.at(i)});
          break;
        }
        const double an = grid.cell(i + 1, j).ground.a;
        if (an > level) {
          const double t = (level - ai) / (an - ai);
          const double n = n_axis.at(i) + t * (n_axis.at(i + 1) - n_axis.at(i));
          grid.contours.push_back({level, u_axis.at(j), n});
          break;
        }
      }
    }
  }
  return grid;
}

double locate_upper_region_ii_edge(double n, double u_lo, double u_hi, double tol) {
  auto in_ii = [&](double u) { return ground_state({n, u}).region == Region::II; };
  if (!in_ii(u_lo) || in_ii(u_hi))
    throw std::invalid_argument("locate_upper_region_ii_edge: bracket does not straddle the edge");
  while (u_hi - u_lo > tol) {
    const double mid = 0.5 * (u_lo + u_hi);
    if (mid <= u_lo || mid >= u_hi) break;
    (in_ii(mid) ? u_lo : u_hi) = mid;
  }
  return 0.5 * (u_lo + u_hi);
}

}  // namespace etapair
