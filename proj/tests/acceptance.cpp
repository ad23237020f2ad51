// Exit gate: one line per criterion, nonzero exit if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "etapair/cli.hpp"
#include "etapair/measures.hpp"
#include "etapair/model.hpp"
#include "etapair/numerics.hpp"
#include "etapair/oracle.hpp"
#include "etapair/qmeasure.hpp"
#include "etapair/scan.hpp"

using namespace etapair;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

// ---------------------------------------------------------------------------

Outcome phase_boundary() {
  double worst = 0.0;
  for (int i = 1; i <= 500; ++i) {
    const double n = (i - 0.5) / 500.0;
    const double edge = locate_upper_region_ii_edge(n, -4.0 + 1e-9, 4.5);
    worst = std::max(worst, std::abs(edge - (-4.0 * std::cos(std::numbers::pi * n))));
  }
  return {worst < 1e-9, "max |du| = " + fmt("%.3g", worst) + " (limit 1e-9)"};
}

Outcome energy_singularity() {
  const double h = 1e-3;
  double worst_fd = 0.0, worst_closed = 0.0;
  for (int i = 0; i <= 700; ++i) {
    const double u = -3.5 + 0.01 * i;
    const double expected = -1.0 / (2.0 * std::numbers::pi * std::sqrt(16.0 - u * u));
    const double analytic = energy_second_derivatives({1.0, u}).d2E_du2;
    const double fd = (ground_state_energy({1.0, u + h}) - 2.0 * ground_state_energy({1.0, u}) +
                       ground_state_energy({1.0, u - h})) /
                      (h * h);
    worst_closed = std::max(worst_closed, std::abs(analytic / expected - 1.0));
    worst_fd = std::max(worst_fd, std::abs(fd / analytic - 1.0));
  }
  return {worst_closed < 1e-12 && worst_fd < 1e-4,
          "closed form rel dev " + fmt("%.3g", worst_closed) + ", finite differences rel dev " +
              fmt("%.3g", worst_fd) + " (limit 1e-4)"};
}

Outcome oracle_equivalence() {
  const auto rows = oracle::verify_closed_forms();
  std::map<std::string, double> worst;
  bool all = true;
  for (const auto& r : rows) {
    all = all && r.passed();
    worst[r.check] = std::max(worst[r.check], r.max_deviation);
  }
  std::ostringstream os;
  os << rows.size() << " comparisons;";
  for (const auto& [k, v] : worst) os << ' ' << k << '=' << fmt("%.2g", v);
  os << " (limits 1e-12 spectra/purities, 1e-10 Q)";
  return {all, os.str()};
}

Outcome odlro_identity() {
  double worst = 0.0;
  for (int i = 1; i <= 100; ++i) {
    const double n = i / 100.0;
    const double top = critical_u(n);
    for (int j = 0; j < 100; ++j) {
      const double u = -8.0 + (top - (-8.0)) * j / 100.0;
      const auto g = ground_state({n, u});
      const double lhs = odlro(g.n_s, g.n_d);
      const double rhs = 3.0 * pair_negativity(g.a) * (1.0 - g.n_s) * (1.0 - g.n_s);
      worst = std::max(worst, std::abs(lhs - rhs));
    }
  }
  return {worst < 1e-12, "max |odlro - 3 N (1-n_s)^2| = " + fmt("%.3g", worst) + " (limit 1e-12)"};
}

SingularityReport classify(const SweepAxis& axis, Measure m, double x_c) {
  return classify_singularity(refined_derivative_samples(axis, m, x_c), x_c);
}

Outcome table_one() {
  const SweepAxis along_u{SweepAxis::Kind::fixed_n, 0.5};
  const double uc = critical_u(0.5);
  bool ok = true;
  std::ostringstream os;

  const auto s_ii_i = classify(along_u, Measure::single_entropy, uc);
  ok = ok && s_ii_i.cls == SingularityClass::log_divergence && s_ii_i.fit_quality > 0.99;
  os << "dS/du II-I " << to_string(s_ii_i.cls) << " R2=" << fmt("%.5f", s_ii_i.fit_quality);

  const auto n_ii_i = classify(along_u, Measure::pair_negativity, uc);
  ok = ok && n_ii_i.cls == SingularityClass::finite_jump;
  os << "; dN/du II-I " << to_string(n_ii_i.cls);

  for (const Measure m : {Measure::pair_negativity, Measure::single_entropy}) {
    const auto r = classify(along_u, m, -4.0);
    ok = ok && r.cls == SingularityClass::inverse_sqrt && std::abs(r.fitted_exponent + 0.5) <= 0.05;
    os << "; d" << measure_name(m) << "/du II-III " << to_string(r.cls) << " p="
       << fmt("%.4f", r.fitted_exponent);
  }

  const SweepAxis along_n{SweepAxis::Kind::fixed_u, 5.0};
  int smooth = 0, total = 0;
  for (const Measure m : all_measures()) {
    if (m == Measure::energy) continue;
    ++total;
    if (classify(along_n, m, 1.0).cls == SingularityClass::smooth) ++smooth;
  }
  ok = ok && smooth == total;
  os << "; I-IV smooth " << smooth << "/" << total;
  return {ok, os.str()};
}

Outcome half_filling() {
  double lo = 1e9, hi = -1e9;
  for (int i = -3999; i <= 3999; ++i) {
    const double s = evaluate_measure(Measure::single_entropy, {1.0, i * 1e-3});
    lo = std::min(lo, s);
    hi = std::max(hi, s);
  }
  const bool constant = std::abs(hi - 2.0) < 1e-12 && std::abs(lo - 2.0) < 1e-12 && hi - lo < 1e-12;

  int smooth = 0, total = 0;
  for (const double a : {0.05, 0.15, 0.25, 0.35, 0.45}) {
    const SweepAxis iso{SweepAxis::Kind::iso_correlation, a};
    for (const Measure m : all_measures()) {
      if (m == Measure::energy || m == Measure::odlro) continue;
      for (const double x_c : {-4.0, 0.0}) {
        ++total;
        if (classify(iso, m, x_c).cls == SingularityClass::smooth) ++smooth;
      }
    }
  }
  return {constant && smooth == total,
          "S_single range [" + fmt("%.17g", lo) + ", " + fmt("%.17g", hi) + "]; iso-curve smooth " +
              std::to_string(smooth) + "/" + std::to_string(total)};
}

Outcome fig_four() {
  bool ok = true;
  std::ostringstream os;
  for (const QMode mode : {QMode::paper_product, QMode::exact_spectrum}) {
    cli::RunConfig c;
    c.subcommand = "qscan";
    c.mode = mode;
    std::ostringstream out, err;
    if (cli::run(c, out, err) != cli::Exit::ok) return {false, "qscan failed: " + err.str()};

    std::istringstream is(out.str());
    std::string line;
    std::getline(is, line);  // config
    std::getline(is, line);  // header
    const std::vector<std::int64_t> Ds = {1, 2, 4, 8, 16, 32};
    std::vector<double> u;
    std::vector<std::vector<double>> q(Ds.size());
    while (std::getline(is, line)) {
      std::istringstream row(line);
      std::string cell;
      std::vector<std::string> cells;
      while (std::getline(row, cell, ',')) cells.push_back(cell);
      u.push_back(std::stod(cells[0]));
      for (std::size_t k = 0; k < Ds.size(); ++k) q[k].push_back(std::stod(cells[4 + k]));
    }

    double worst_rise = -1.0;
    for (const auto& col : q)
      for (std::size_t i = 1; i < col.size(); ++i) worst_rise = std::max(worst_rise, col[i] - col[i - 1]);
    const bool monotone = worst_rise <= 1e-12;

    double worst_order = -1.0;
    for (std::size_t k = 2; k + 1 < Ds.size(); ++k)
      for (std::size_t i = 0; i < u.size(); ++i)
        worst_order = std::max(worst_order, q[k][i] - q[k + 1][i]);
    const bool ordered = worst_order <= 1e-12;

    // steepest descent on the region II side of u_c = -4 cos(pi/2) = 0
    std::vector<double> slope;
    for (std::size_t k = 2; k < Ds.size(); ++k) {
      double m = 0.0;
      for (std::size_t i = 1; i < u.size(); ++i)
        if (u[i] <= 1e-9 && u[i] >= -0.5)
          m = std::max(m, std::abs((q[k][i] - q[k][i - 1]) / (u[i] - u[i - 1])));
      slope.push_back(m);
    }
    bool growing = true;
    for (std::size_t k = 1; k < slope.size(); ++k) growing = growing && slope[k] > slope[k - 1];

    ok = ok && monotone && ordered && growing;
    os << (mode == QMode::paper_product ? "paper" : "exact") << ": max rise "
       << fmt("%.2g", worst_rise) << ", max order violation " << fmt("%.2g", worst_order)
       << ", max|dQ/du| D=4..32";
    for (const double s : slope) os << ' ' << fmt("%.4g", s);
    if (mode == QMode::paper_product) os << "; ";
  }
  return {ok, os.str()};
}

Outcome q_limits() {
  double worst = 0.0;
  for (const double L : {10.0, 100.0, 1000.0}) {
    for (const double Ns : {0.0, 0.3 * L}) {
      for (const std::int64_t D : {1, 2, 4, 8}) {
        for (const QMode mode : {QMode::exact_spectrum, QMode::paper_product}) {
          QParams q;
          q.L = L;
          q.N_s = Ns;
          q.D = D;
          q.mode = mode;
          if (static_cast<double>(D) > q.slots()) continue;
          q.N_d = 0.0;
          worst = std::max(worst, std::abs(q_measure(q)));
          q.N_d = q.slots();
          worst = std::max(worst, std::abs(q_measure(q)));
        }
      }
    }
  }
  return {worst <= 1e-12, "max |Q| at empty and full sectors = " + fmt("%.3g", worst) + " (limit 1e-12)"};
}

Outcome log_growth() {
  bool ok = true;
  std::ostringstream os;
  for (const std::int64_t P : {512, 1024, 2048}) {
    const double d = block_entropy_tdl(0.5, {0, 2 * P}) - block_entropy_tdl(0.5, {0, P});
    ok = ok && std::abs(d - 0.5) <= 0.05;
    os << "P=" << P << ": " << fmt("%.5f", d) << " bits; ";
  }
  return {ok, os.str() + "(target 0.50 +- 0.05)"};
}

struct LineFit {
  double intercept, slope, max_residual;
};

LineFit fit(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  const double intercept = (sy - slope * sx) / n;
  double r = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i)
    r = std::max(r, std::abs(y[i] - (intercept + slope * x[i])));
  return {intercept, slope, r};
}

Outcome paired_entropy_arbitration() {
  const double a = 0.5;
  std::vector<double> inv_l, s_pair, s_single;
  for (int L = 12; L <= 20; L += 2) {
    const auto st = oracle::build_state(L, L / 2);
    inv_l.push_back(1.0 / L);
    s_pair.push_back(oracle::exact_entropy(oracle::exact_rdm(st, {0, st.partner(0)})));
    s_single.push_back(oracle::exact_entropy(oracle::exact_rdm(st, {0})));
  }
  const LineFit pair = fit(inv_l, s_pair);
  const LineFit single = fit(inv_l, s_single);

  const double printed = paired_modes_entropy(a, FormulaPath::printed);
  const double spectrum = paired_modes_entropy(a, FormulaPath::spectrum);
  const double d_printed = std::abs(pair.intercept - printed);
  const double d_spectrum = std::abs(pair.intercept - spectrum);
  const bool spectrum_selected = d_spectrum < d_printed;
  const double margin = std::abs(d_printed - d_spectrum);
  const double residual = std::max(pair.max_residual, 1e-300);
  const bool discriminates = margin >= 10.0 * residual;

  const double mi_extrapolated = 2.0 * single.intercept - pair.intercept;
  const double mi_printed = pair_mutual_information(a, FormulaPath::printed);
  const double mi_dev = std::abs(mi_extrapolated - mi_printed);
  const bool matches = mi_dev <= 1e-3;

  std::ostringstream os;
  os << "S_pair(1/L'->0) = " << fmt("%.6f", pair.intercept) << " selects "
     << (spectrum_selected ? "2h2-2a(1-a)" : "2h2+a(1-a)") << ", margin/residual = "
     << fmt("%.3g", margin / residual) << "; I(extrapolated) = " << fmt("%.6f", mi_extrapolated)
     << " vs printed " << fmt("%.6f", mi_printed) << ", |dev| = " << fmt("%.3g", mi_dev)
     << " (limit 1e-3)";
  return {spectrum_selected && discriminates && matches, os.str()};
}

struct Criterion {
  int id;
  const char* name;
  double limit_seconds;
  std::function<Outcome()> check;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "phase boundary", 1.0, phase_boundary},
      {2, "energy singularity at n=1", 1.0, energy_singularity},
      {3, "oracle equivalence", 60.0, oracle_equivalence},
      {4, "ODLRO identity", 1.0, odlro_identity},
      {5, "transition table classification", 30.0, table_one},
      {6, "half-filling constancy", 5.0, half_filling},
      {7, "Q scan qualitative shape", 300.0, fig_four},
      {8, "Q trivial limits", 1e9, q_limits},
      {9, "block-entropy log growth", 10.0, log_growth},
      {10, "paired-mode entropy arbitration", 1e9, paired_entropy_arbitration},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs < c.limit_seconds;
    const bool pass = o.pass && in_time;
    if (!pass) ++failed;
    std::printf("[%s] %2d %s: %s; %.3f s%s\n", pass ? "PASS" : "FAIL", c.id, c.name,
                o.detail.c_str(), secs, in_time ? "" : " (over time limit)");
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
