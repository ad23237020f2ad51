#pragma once

#include <string_view>

namespace etapair {

/// Point of the ground-state phase diagram: filling n in (0, 1] and on-site
/// coupling u in hopping units.
struct PhasePoint {
  double n = 0.0;
  double u = 0.0;
};

enum class Region { I, II, III, IV, boundary };

std::string_view to_string(Region r);

/// Densities of unpaired fermions (n_s) and eta pairs (n_d) minimizing the
/// thermodynamic-limit energy, plus the slot occupation probability
/// a = n_d / (1 - n_s).
struct GroundStateParams {
  double n_s = 0.0;
  double n_d = 0.0;
  Region region = Region::I;
  double a = 0.0;
};

/// Which side of a critical line a one-sided limit is taken from, along u.
enum class Side { from_below, from_above };

struct EnergyDerivatives {
  double d2E_du2 = 0.0;
  double d2E_dn2 = 0.0;
  Side side = Side::from_below;
};

/// u_c(n) = -4 cos(pi n), the II/I (or II/IV at n = 1) critical coupling.
double critical_u(double n);

/// Unpaired density at the stationary point, arccos(-u/4)/pi clamped to
/// [0, 1] outside |u| < 4.
double stationary_unpaired_density(double u);

/// Minimizes the energy density at fixed n. Boundary points carry the
/// limiting-from-II parameters.
GroundStateParams ground_state(const PhasePoint& p);

/// e(n_s, n_d) = -(2/pi) sin(pi n_s) + u n_d.
double energy_density(double n_s, double n_d, double u);

/// Ground-state energy density at p (energy_density at ground_state(p)).
double ground_state_energy(const PhasePoint& p);

/// Closed-form second derivatives of the ground-state energy density.
///
/// Off the critical lines `side` is ignored. On a critical line it selects
/// the region whose formula is continued: from_below takes the region at
/// smaller u. Throws std::domain_error when the selected formula is the
/// region-II one at |u| = 4, where d2E/du2 diverges.
///
/// The region-I n-derivative is 2 pi sin(pi n), the exact second derivative
/// of -(2/pi) sin(pi n).
EnergyDerivatives energy_second_derivatives(const PhasePoint& p,
                                            Side side = Side::from_below);

/// Filling n(u) = n_s(u) + 2a (1 - n_s(u)) along which ground_state yields
/// the constant correlation parameter a.
double iso_correlation_curve(double a, double u);

}  // namespace etapair
