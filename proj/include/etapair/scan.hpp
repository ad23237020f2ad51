#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "etapair/measures.hpp"
#include "etapair/model.hpp"

namespace etapair {

/// Scalar quantities a sweep can record at each phase point.
enum class Measure {
  a,                     ///< slot occupation n_d / (1 - n_s)
  single_entropy,        ///< S_k
  pair_entropy,          ///< S_{k,-k}
  pair_mutual_info,      ///< I_{k,-k}
  pair_negativity,       ///< N_{k,-k}
  two_pair_mutual_info,  ///< I between two (-k, k) pairs
  odlro,                 ///< n_d (1 - n_s - n_d)
  energy,                ///< ground-state energy density
};

std::string_view measure_name(Measure m);
std::optional<Measure> parse_measure(std::string_view name);
const std::vector<Measure>& all_measures();

struct MeasureOptions {
  FormulaPath pair_entropy_path = FormulaPath::spectrum;
  FormulaPath negativity_path = FormulaPath::printed;
  LogBase base = LogBase::bits;
};

double evaluate_measure(Measure m, const PhasePoint& p, const MeasureOptions& opts = {});

/// Line through the phase diagram parametrized by x.
///   fixed_n:         x = u at fixed n
///   fixed_u:         x = n at fixed u
///   iso_correlation: x = u along the curve of constant a; for u <= -4 the
///                    curve continues inside region III as n = 2a
struct SweepAxis {
  enum class Kind { fixed_n, fixed_u, iso_correlation };
  Kind kind = Kind::fixed_n;
  double fixed = 0.5;  ///< n, u, or a

  PhasePoint at(double x) const;
  std::string_view x_name() const;
  void validate_range(double x_min, double x_max) const;
};

struct SweepRange {
  double min = 0.0;
  double max = 0.0;
  double step = 0.0;

  /// Points min + i step for i = 0.. while <= max (with a 1e-9 step slack).
  std::vector<double> points() const;
};

struct ScanRecord {
  double x = 0.0;
  PhasePoint point;
  Region region = Region::I;
  std::vector<double> values;              ///< one per Sweep::measures
  std::vector<std::optional<double>> d1;   ///< empty until differentiated
};

struct Sweep {
  SweepAxis axis;
  std::vector<Measure> measures;
  std::vector<ScanRecord> records;

  std::size_t column(Measure m) const;
};

/// Evaluates every requested measure at each point of the range.
Sweep sweep(const SweepAxis& axis, const SweepRange& range, std::vector<Measure> measures,
            const MeasureOptions& opts = {});

/// Central differences on a uniform sweep; one-sided where a neighbour lies in
/// another region; absent at the endpoints and on boundary points.
Sweep numerical_derivative(Sweep s);

struct DerivativeSample {
  double x = 0.0;
  double d1 = 0.0;
};

enum class ApproachSide { below, above, both };

std::string_view to_string(ApproachSide s);

/// Geometric sampling of |x - x_c| in [min_dist, max_dist] with local central
/// differences of step min(h, |x - x_c| / 4), so stencils never cross x_c.
struct RefinementPolicy {
  double h = 1e-4;
  double min_dist = 1e-5;
  double max_dist = 1e-2;
  int points_per_decade = 12;
  ApproachSide sides = ApproachSide::both;
};

std::vector<DerivativeSample> refined_derivative_samples(const SweepAxis& axis, Measure m,
                                                         double x_c,
                                                         const RefinementPolicy& policy = {},
                                                         const MeasureOptions& opts = {});

/// Extracts (x, d1) of one measure from a differentiated sweep.
std::vector<DerivativeSample> derivative_samples(const Sweep& s, Measure m);

enum class SingularityClass { inverse_sqrt, log_divergence, finite_jump, smooth, power_law };

std::string_view to_string(SingularityClass c);

struct WindowPolicy {
  double min_dist = 1e-5;
  double max_dist = 1e-2;
  std::size_t min_points = 8;
  double expected_exponent = -0.5;
  double exponent_tolerance = 0.05;
  /// Required relative advantage in unexplained variance between models.
  double model_margin = 0.10;
  /// A side is bounded when a linear fit in |x - x_c| leaves a relative rms
  /// residual below this.
  double bounded_tolerance = 1e-3;
  /// Absolute rms residual below which a side counts as bounded regardless of
  /// scale (rounding noise of local central differences sits far below it).
  double noise_floor = 1e-8;
};

struct SingularityReport {
  double x_c = 0.0;
  SingularityClass cls = SingularityClass::smooth;
  double fitted_exponent = 0.0;  ///< power-law exponent on the approach side (NaN if none)
  double fit_quality = 0.0;      ///< R^2 of the selected model (log-log or semilog axes)
  ApproachSide side = ApproachSide::both;
  std::optional<double> limit_below;
  std::optional<double> limit_above;
  std::string notes;
};

/// Fits |d1| against A |x-x_c|^p (log-log) and A log|x-x_c| + B (semilog)
/// on a divergent side; declares finite_jump when both one-sided limits are
/// bounded and differ by more than 10x the noise floor; smooth otherwise.
/// Throws std::invalid_argument if no side has min_points samples in the window.
SingularityReport classify_singularity(std::span<const DerivativeSample> samples, double x_c,
                                       const WindowPolicy& policy = {});

struct GridAxis {
  double min = 0.0;
  double max = 0.0;
  std::size_t count = 2;

  double at(std::size_t i) const;
};

struct PhaseCell {
  double n = 0.0;
  double u = 0.0;
  GroundStateParams ground;
};

struct ContourPoint {
  double level = 0.0;
  double u = 0.0;
  double n = 0.0;
};

/// Cells are stored n-major: cells[i * u_axis.count + j] is (n_i, u_j).
struct PhaseGrid {
  GridAxis n_axis;
  GridAxis u_axis;
  std::vector<PhaseCell> cells;
  std::vector<ContourPoint> contours;

  const PhaseCell& cell(std::size_t i_n, std::size_t j_u) const {
    return cells[i_n * u_axis.count + j_u];
  }
};

/// Region labels and densities on a rectangular grid, plus iso-correlation
/// contours at the requested a levels, interpolated along n in each u column.
PhaseGrid phase_grid(const GridAxis& n_axis, const GridAxis& u_axis,
                     const std::vector<double>& a_levels = {});

/// Bisects the region classifier along u at fixed n for the upper edge of
/// region II inside (u_lo, u_hi).
double locate_upper_region_ii_edge(double n, double u_lo, double u_hi, double tol = 1e-13);

}  // namespace etapair
