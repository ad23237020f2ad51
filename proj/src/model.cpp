#include "etapair/model.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace etapair {

namespace {

constexpr double kPi = std::numbers::pi;

// Relative tolerance for tagging a point as lying on a critical line.
constexpr double kBoundaryTol = 1e-13;

void check_point(const PhasePoint& p) {
  if (!(p.n > 0.0 && p.n <= 1.0))
    throw std::domain_error("filling n must lie in (0, 1]");
  if (!std::isfinite(p.u)) throw std::domain_error("coupling u must be finite");
}

double correlation_parameter(double n_s, double n_d) {
  if (n_d <= 0.0 || n_s >= 1.0) return 0.0;
  return n_d / (1.0 - n_s);
}

GroundStateParams make_params(double n, double n_s, Region region) {
  GroundStateParams g;
  g.n_s = n_s;
  g.n_d = 0.5 * (n - n_s);
  g.region = region;
  g.a = correlation_parameter(g.n_s, g.n_d);
  return g;
}

bool on_line(double u, double uc) {
  return std::abs(u - uc) <= kBoundaryTol * std::max(1.0, std::abs(uc));
}

}  // namespace

std::string_view to_string(Region r) {
  switch (r) {
    case Region::I: return "I";
    case Region::II: return "II";
    case Region::III: return "III";
    case Region::IV: return "IV";
    case Region::boundary: return "boundary";
  }
  return "?";
}

double critical_u(double n) {
  if (!(n > 0.0 && n <= 1.0))
    throw std::domain_error("critical_u: filling n must lie in (0, 1]");
  return -4.0 * std::cos(kPi * n);
}

double stationary_unpaired_density(double u) {
  if (u <= -4.0) return 0.0;
  if (u >= 4.0) return 1.0;
  return std::acos(-u / 4.0) / kPi;
}

GroundStateParams ground_state(const PhasePoint& p) {
  check_point(p);
  const double n = p.n;
  const double u = p.u;

  if (on_line(u, -4.0)) return make_params(n, 0.0, Region::boundary);
  const double uc = critical_u(n);
  if (on_line(u, uc)) return make_params(n, n, Region::boundary);

  if (u < -4.0) return make_params(n, 0.0, Region::III);
  if (u > uc) return make_params(n, n, n == 1.0 ? Region::IV : Region::I);
  // -4 < u < u_c(n): stationary point is interior and below n.
  return make_params(n, stationary_unpaired_density(u), Region::II);
}

double energy_density(double n_s, double n_d, double u) {
  if (n_s < 0.0 || n_s > 1.0)
    throw std::domain_error("energy_density: n_s outside [0, 1]");
  if (n_d < 0.0 || n_s + 2.0 * n_d > 2.0)
    throw std::domain_error("energy_density: n_s + 2 n_d outside [0, 2]");
  return -(2.0 / kPi) * std::sin(kPi * n_s) + u * n_d;
}

double ground_state_energy(const PhasePoint& p) {
  const GroundStateParams g = ground_state(p);
  return energy_density(g.n_s, g.n_d, p.u);
}

EnergyDerivatives energy_second_derivatives(const PhasePoint& p, Side side) {
  check_point(p);
  const GroundStateParams g = ground_state(p);
  Region region = g.region;

  if (region == Region::boundary) {
    if (on_line(p.u, -4.0)) {
      region = side == Side::from_below ? Region::III : Region::II;
    } else {
      region = side == Side::from_below
                   ? Region::II
                   : (p.n == 1.0 ? Region::IV : Region::I);
    }
  }

  EnergyDerivatives d;
  d.side = side;
  switch (region) {
    case Region::II: {
      const double disc = 16.0 - p.u * p.u;
      if (disc <= 0.0)
        throw std::domain_error(
            "energy_second_derivatives: d2E/du2 diverges at |u| = 4");
      // d2E/du2 = -(1/2) dn_s/du with n_s(u) = arccos(-u/4)/pi.
      d.d2E_du2 = -1.0 / (2.0 * kPi * std::sqrt(disc));
      d.d2E_dn2 = 0.0;
      break;
    }
    case Region::I:
    case Region::IV:
      d.d2E_du2 = 0.0;
      d.d2E_dn2 = 2.0 * kPi * std::sin(kPi * p.n);
      break;
    case Region::III:
    case Region::boundary:
      d.d2E_du2 = 0.0;
      d.d2E_dn2 = 0.0;
      break;
  }
  return d;
}

double iso_correlation_curve(double a, double u) {
  if (!(a >= 0.0 && a <= 0.5))
    throw std::domain_error("iso_correlation_curve: a must lie in [0, 1/2]");
  if (!(u > -4.0 && u < 4.0))
    throw std::domain_error("iso_correlation_curve: u must lie in (-4, 4)");
  const double n_s = stationary_unpaired_density(u);
  const double n = n_s + 2.0 * a * (1.0 - n_s);
  if (!(n > 0.0 && n <= 1.0))
    throw std::domain_error("iso_correlation_curve: resulting n outside (0, 1]");
  return n;
}

}  // namespace etapair
