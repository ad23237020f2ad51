#include "etapair/cli.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "etapair/model.hpp"
#include "etapair/oracle.hpp"
#include "etapair/scan.hpp"

namespace etapair::cli {

namespace {

const std::vector<std::int64_t> kDefaultD = {1, 2, 4, 8, 16, 32};

std::string_view mode_name(QMode m) { return m == QMode::paper_product ? "paper" : "exact"; }
std::string_view path_name(FormulaPath p) {
  return p == FormulaPath::printed ? "printed" : "spectrum";
}
std::string_view counting_name(PartitionCounting c) {
  return c == PartitionCounting::printed ? "printed" : "combinatorial";
}

std::string opt(const std::optional<double>& v) { return v ? format_double(*v) : "-"; }

double get(const std::optional<double>& v, double fallback) { return v ? *v : fallback; }

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

void check_range(const char* name, double lo, double hi, double step) {
  require(std::isfinite(lo) && std::isfinite(hi), std::string(name) + " range must be finite");
  require(lo <= hi, std::string(name) + "-min must not exceed " + name + "-max");
  require(step > 0.0 && std::isfinite(step), std::string(name) + "-step must be positive");
}

void check_filling(const char* what, double n) {
  require(n > 0.0 && n <= 1.0, std::string(what) + " must lie in (0, 1]");
}

class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& os) : os_(os) {}

  void comment(const std::string& line) { os_ << line << '\n'; }

  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) os_ << ',';
      os_ << quoted(cells[i]);
    }
    os_ << '\n';
  }

 private:
  static std::string quoted(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (const char c : s) {
      if (c == '"') q += '"';
      q += c;
    }
    return q + '"';
  }

  std::ostream& os_;
};

std::vector<Measure> selected_measures(const RunConfig& c) {
  if (c.measures.empty()) return all_measures();
  std::vector<Measure> ms;
  for (const auto& name : c.measures) ms.push_back(*parse_measure(name));
  return ms;
}

MeasureOptions measure_options(const RunConfig& c) {
  return {c.pair_entropy_path, c.negativity_path, c.base};
}

// ---------------------------------------------------------------------------

Exit run_phase(const RunConfig& c, CsvWriter& csv) {
  const GridAxis n_axis{get(c.n_min, 1.0 / static_cast<double>(c.n_res)), get(c.n_max, 1.0),
                        static_cast<std::size_t>(c.n_res)};
  const GridAxis u_axis{get(c.u_min, -8.0), get(c.u_max, 8.0),
                        static_cast<std::size_t>(c.u_res)};
  const PhaseGrid grid = phase_grid(n_axis, u_axis, c.contour_levels);
  csv.row({"n", "u", "region", "n_s", "n_d", "a"});
  for (const auto& cell : grid.cells) {
    csv.row({format_double(cell.n), format_double(cell.u), std::string(to_string(cell.ground.region)),
             format_double(cell.ground.n_s), format_double(cell.ground.n_d),
             format_double(cell.ground.a)});
  }
  if (!c.contour_out.empty()) {
    std::ofstream f(c.contour_out, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + c.contour_out);
    CsvWriter contours(f);
    contours.comment(config_comment(c));
    contours.row({"level", "u", "n"});
    for (const auto& p : grid.contours)
      contours.row({format_double(p.level), format_double(p.u), format_double(p.n)});
  }
  return Exit::ok;
}

Exit run_measures(const RunConfig& c, CsvWriter& csv) {
  SweepAxis axis;
  SweepRange range;
  if (c.n) {
    axis = {SweepAxis::Kind::fixed_n, *c.n};
    range = {get(c.u_min, -3.99), get(c.u_max, 3.99), get(c.u_step, 0.01)};
  } else if (c.u) {
    axis = {SweepAxis::Kind::fixed_u, *c.u};
    range = {get(c.n_min, 0.01), get(c.n_max, 1.0), get(c.n_step, 0.01)};
  } else {
    axis = {SweepAxis::Kind::iso_correlation, *c.a};
    range = {get(c.u_min, -3.99), get(c.u_max, 3.99), get(c.u_step, 0.01)};
  }
  Sweep s = sweep(axis, range, selected_measures(c), measure_options(c));
  if (s.records.size() >= 3) s = numerical_derivative(std::move(s));

  std::vector<std::string> header = {"x", "n", "u", "region"};
  for (const Measure m : s.measures) header.emplace_back(measure_name(m));
  for (const Measure m : s.measures) header.push_back("d_" + std::string(measure_name(m)));
  csv.row(header);
  for (const auto& r : s.records) {
    std::vector<std::string> row = {format_double(r.x), format_double(r.point.n),
                                    format_double(r.point.u), std::string(to_string(r.region))};
    for (const double v : r.values) row.push_back(format_double(v));
    for (std::size_t k = 0; k < s.measures.size(); ++k) {
      const bool has = k < r.d1.size() && r.d1[k];
      row.push_back(has ? format_double(*r.d1[k]) : "");
    }
    csv.row(row);
  }
  return Exit::ok;
}

Exit run_qscan(const RunConfig& c, CsvWriter& csv) {
  const std::vector<std::int64_t>& Ds = c.D.empty() ? kDefaultD : c.D;
  const double n = c.N / c.L;
  const SweepRange range{get(c.u_min, -4.0), get(c.u_max, 4.0), get(c.u_step, 0.01)};

  std::vector<std::string> header = {"u", "region", "n_s", "n_d"};
  for (const auto D : Ds) header.push_back("Q_" + std::to_string(D));
  csv.row(header);
  for (const double u : range.points()) {
    const GroundStateParams g = ground_state({n, u});
    std::vector<std::string> row = {format_double(u), std::string(to_string(g.region)),
                                    format_double(g.n_s), format_double(g.n_d)};
    for (const auto D : Ds) {
      QParams q;
      q.L = c.L;
      q.N_s = c.L * g.n_s;
      q.N_d = c.L * g.n_d;
      q.D = D;
      q.mode = c.mode;
      q.counting = c.counting;
      double value = std::nan("");
      if (q.N_d == 0.0) {
        value = 0.0;  // product state
      } else if (static_cast<double>(D) <= q.slots()) {
        value = q_measure(q);
      }
      row.push_back(format_double(value));
    }
    csv.row(row);
  }
  return Exit::ok;
}

struct Transition {
  std::string name;
  SweepAxis axis;
  double x_c;
};

Exit run_singularity(const RunConfig& c, CsvWriter& csv) {
  const double n = get(c.n, 0.5);
  const double u = get(c.u, 2.0);
  std::vector<Transition> transitions;
  if (n < 1.0) transitions.push_back({"II-I", {SweepAxis::Kind::fixed_n, n}, critical_u(n)});
  transitions.push_back({"II-III", {SweepAxis::Kind::fixed_n, n}, -4.0});
  if (std::abs(u) < 4.0)
    transitions.push_back(
        {"II-I", {SweepAxis::Kind::fixed_u, u}, stationary_unpaired_density(u)});
  transitions.push_back({"I-IV", {SweepAxis::Kind::fixed_u, 5.0}, 1.0});

  const std::vector<Measure> ms =
      c.measures.empty() ? std::vector<Measure>{Measure::single_entropy, Measure::pair_entropy,
                                                Measure::pair_mutual_info,
                                                Measure::pair_negativity,
                                                Measure::two_pair_mutual_info}
                         : selected_measures(c);
  const auto opts = measure_options(c);

  csv.row({"transition", "x", "fixed", "measure", "x_c", "class", "exponent", "r2", "side",
           "limit_below", "limit_above", "notes"});
  for (const auto& t : transitions) {
    for (const Measure m : ms) {
      const auto samples = refined_derivative_samples(t.axis, m, t.x_c, {}, opts);
      const auto rep = classify_singularity(samples, t.x_c);
      csv.row({t.name, std::string(t.axis.x_name()), format_double(t.axis.fixed),
               std::string(measure_name(m)), format_double(rep.x_c),
               std::string(to_string(rep.cls)), format_double(rep.fitted_exponent),
               format_double(rep.fit_quality), std::string(to_string(rep.side)),
               opt(rep.limit_below), opt(rep.limit_above), rep.notes});
    }
  }
  return Exit::ok;
}

Exit run_isocurve(const RunConfig& c, CsvWriter& csv) {
  const SweepRange range{get(c.u_min, -3.99), get(c.u_max, 3.99), get(c.u_step, 0.01)};
  csv.row({"u", "n"});
  for (const double u : range.points())
    csv.row({format_double(u), format_double(iso_correlation_curve(*c.a, u))});
  return Exit::ok;
}

Exit run_oracle_verify(const RunConfig& c, CsvWriter& csv) {
  oracle::VerifyOptions opts;
  if (c.tol) opts.spectrum_tol = opts.purity_tol = opts.q_tol = *c.tol;
  const auto rows = oracle::verify_closed_forms(opts);
  csv.row({"check", "slots", "pairs", "lone_modes", "full_pairs", "D", "max_deviation",
           "tolerance", "status"});
  bool all = true;
  for (const auto& r : rows) {
    all = all && r.passed();
    csv.row({r.check, std::to_string(r.slots), std::to_string(r.pairs),
             std::to_string(r.lone_modes), std::to_string(r.full_pairs), std::to_string(r.D),
             format_double(r.max_deviation), format_double(r.tolerance),
             r.passed() ? "pass" : "FAIL"});
  }
  return all ? Exit::ok : Exit::oracle_failure;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string config_comment(const RunConfig& c) {
  std::ostringstream os;
  os << "# etapair " << c.subcommand << " n=" << opt(c.n) << " u=" << opt(c.u)
     << " a=" << opt(c.a) << " u-min=" << opt(c.u_min) << " u-max=" << opt(c.u_max)
     << " u-step=" << opt(c.u_step) << " n-min=" << opt(c.n_min) << " n-max=" << opt(c.n_max)
     << " n-step=" << opt(c.n_step) << " n-res=" << c.n_res << " u-res=" << c.u_res
     << " L=" << format_double(c.L) << " N=" << format_double(c.N) << " D=";
  const auto& Ds = c.D.empty() ? kDefaultD : c.D;
  for (std::size_t i = 0; i < Ds.size(); ++i) os << (i ? ";" : "") << Ds[i];
  os << " levels=";
  for (std::size_t i = 0; i < c.contour_levels.size(); ++i)
    os << (i ? ";" : "") << format_double(c.contour_levels[i]);
  os << " mode=" << mode_name(c.mode) << " count=" << counting_name(c.counting)
     << " pair-entropy=" << path_name(c.pair_entropy_path)
     << " negativity=" << path_name(c.negativity_path)
     << " log-base=" << (c.base == LogBase::bits ? "2" : "e") << " measures=";
  for (std::size_t i = 0; i < c.measures.size(); ++i) os << (i ? ";" : "") << c.measures[i];
  os << " tol=" << opt(c.tol);
  return os.str();
}

void validate(const RunConfig& c) {
  const std::string& s = c.subcommand;
  for (const auto& name : c.measures)
    require(parse_measure(name).has_value(), "unknown measure '" + name + "'");
  if (c.n) check_filling("--n", *c.n);
  if (c.u) require(std::isfinite(*c.u), "--u must be finite");
  if (c.tol) require(*c.tol >= 0.0 && std::isfinite(*c.tol), "--tol must be non-negative");

  if (s == "phase") {
    require(c.n_res >= 2 && c.u_res >= 2, "--n-res and --u-res must be >= 2");
    require(c.n_res * c.u_res <= 25'000'000, "phase grid larger than 25M cells");
    const double n_lo = get(c.n_min, 1.0 / static_cast<double>(c.n_res));
    const double n_hi = get(c.n_max, 1.0);
    check_filling("--n-min", n_lo);
    check_filling("--n-max", n_hi);
    require(n_lo <= n_hi, "--n-min must not exceed --n-max");
    check_range("--u", get(c.u_min, -8.0), get(c.u_max, 8.0), 1.0);
    for (const double a : c.contour_levels)
      require(a >= 0.0 && a <= 0.5, "--a contour levels must lie in [0, 1/2]");
  } else if (s == "measures") {
    const int fixed = (c.n ? 1 : 0) + (c.u ? 1 : 0) + (c.a ? 1 : 0);
    require(fixed == 1, "measures needs exactly one of --n, --u, --a");
    SweepAxis axis;
    double lo = 0.0, hi = 0.0, step = 0.0;
    if (c.n) {
      axis = {SweepAxis::Kind::fixed_n, *c.n};
      lo = get(c.u_min, -3.99), hi = get(c.u_max, 3.99), step = get(c.u_step, 0.01);
      check_range("--u", lo, hi, step);
    } else if (c.u) {
      axis = {SweepAxis::Kind::fixed_u, *c.u};
      lo = get(c.n_min, 0.01), hi = get(c.n_max, 1.0), step = get(c.n_step, 0.01);
      check_range("--n", lo, hi, step);
    } else {
      axis = {SweepAxis::Kind::iso_correlation, *c.a};
      lo = get(c.u_min, -3.99), hi = get(c.u_max, 3.99), step = get(c.u_step, 0.01);
      check_range("--u", lo, hi, step);
    }
    axis.validate_range(lo, hi);
    require((hi - lo) / step <= 1e7, "sweep has more than 10M points");
  } else if (s == "qscan") {
    require(c.L > 0.0 && std::isfinite(c.L), "--L must be positive");
    require(c.N > 0.0 && c.N <= c.L, "--N must lie in (0, L]");
    for (const auto D : c.D) require(D >= 1, "--D must be >= 1");
    for (const auto D : c.D)
      require(static_cast<double>(D) <= c.L, "--D must not exceed --L");
    const double lo = get(c.u_min, -4.0), hi = get(c.u_max, 4.0), step = get(c.u_step, 0.01);
    check_range("--u", lo, hi, step);
    require((hi - lo) / step <= 1e7, "sweep has more than 10M points");
  } else if (s == "singularity") {
    check_filling("--n", get(c.n, 0.5));
  } else if (s == "isocurve") {
    require(c.a.has_value(), "isocurve needs --a");
    require(*c.a >= 0.0 && *c.a <= 0.5, "--a must lie in [0, 1/2]");
    const double lo = get(c.u_min, -3.99), hi = get(c.u_max, 3.99), step = get(c.u_step, 0.01);
    check_range("--u", lo, hi, step);
    require(lo > -4.0 && hi < 4.0, "isocurve needs -4 < u < 4");
    for (const double u : SweepRange{lo, hi, step}.points()) {
      try {
        iso_correlation_curve(*c.a, u);
      } catch (const std::domain_error&) {
        throw std::invalid_argument("--a level has no filling in (0, 1] at u = " +
                                    format_double(u));
      }
    }
  } else if (s == "oracle-verify") {
  } else {
    throw std::invalid_argument("unknown subcommand '" + s + "'");
  }
}

Exit run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  try {
    validate(c);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return Exit::validation;
  }
  CsvWriter csv(out);
  csv.comment(config_comment(c));
  const std::string& s = c.subcommand;
  if (s == "phase") return run_phase(c, csv);
  if (s == "measures") return run_measures(c, csv);
  if (s == "qscan") return run_qscan(c, csv);
  if (s == "singularity") return run_singularity(c, csv);
  if (s == "isocurve") return run_isocurve(c, csv);
  return run_oracle_verify(c, csv);
}

int main_entry(int argc, char** argv) {
  CLI::App app{"Momentum-space entanglement of the eta-pairing ground state"};
  app.require_subcommand(1);
  RunConfig c;

  const std::map<std::string, QMode> modes = {{"paper", QMode::paper_product},
                                              {"exact", QMode::exact_spectrum}};
  const std::map<std::string, PartitionCounting> counts = {
      {"combinatorial", PartitionCounting::combinatorial},
      {"printed", PartitionCounting::printed}};
  const std::map<std::string, FormulaPath> paths = {{"printed", FormulaPath::printed},
                                                    {"spectrum", FormulaPath::spectrum}};
  const std::map<std::string, LogBase> bases = {{"2", LogBase::bits}, {"e", LogBase::nats}};

  auto add_u_range = [&](CLI::App* sub) {
    sub->add_option("--u-min", c.u_min);
    sub->add_option("--u-max", c.u_max);
    sub->add_option("--u-step", c.u_step);
  };
  auto add_n_range = [&](CLI::App* sub) {
    sub->add_option("--n-min", c.n_min);
    sub->add_option("--n-max", c.n_max);
    sub->add_option("--n-step", c.n_step);
  };
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", c.out, "output CSV path (default stdout)");
    sub->add_option("--log-base", c.base, "2 or e")
        ->transform(CLI::CheckedTransformer(bases, CLI::ignore_case));
  };

  auto* phase = app.add_subcommand("phase", "region labels and densities on an (n, u) grid");
  add_u_range(phase);
  add_n_range(phase);
  phase->add_option("--n-res", c.n_res, "grid points along n");
  phase->add_option("--u-res", c.u_res, "grid points along u");
  phase->add_option("--a", c.contour_levels, "iso-correlation contour levels");
  phase->add_option("--contour-out", c.contour_out, "CSV path for contour points");
  add_common(phase);

  auto* measures = app.add_subcommand("measures", "correlation measures along a sweep");
  measures->add_option("--n", c.n, "fixed filling (sweep u)");
  measures->add_option("--u", c.u, "fixed coupling (sweep n)");
  measures->add_option("--a", c.a, "fixed correlation level (sweep u along the iso-curve)");
  add_u_range(measures);
  add_n_range(measures);
  measures->add_option("--measure", c.measures, "measure names (default all)");
  measures->add_option("--pair-entropy", c.pair_entropy_path, "printed or spectrum")
      ->transform(CLI::CheckedTransformer(paths, CLI::ignore_case));
  measures->add_option("--negativity", c.negativity_path, "printed or spectrum")
      ->transform(CLI::CheckedTransformer(paths, CLI::ignore_case));
  add_common(measures);

  auto* qscan = app.add_subcommand("qscan", "multipartite Q versus u");
  qscan->add_option("--L", c.L, "chain length");
  qscan->add_option("--N", c.N, "fermion number");
  qscan->add_option("--D", c.D, "block sizes (repeatable)");
  add_u_range(qscan);
  qscan->add_option("--mode", c.mode, "paper or exact")
      ->transform(CLI::CheckedTransformer(modes, CLI::ignore_case));
  qscan->add_option("--count", c.counting, "combinatorial or printed")
      ->transform(CLI::CheckedTransformer(counts, CLI::ignore_case));
  add_common(qscan);

  auto* sing = app.add_subcommand("singularity", "classify derivative singularities");
  sing->add_option("--n", c.n, "filling for the u sweeps (default 0.5)");
  sing->add_option("--u", c.u, "coupling for the n sweep (default 2)");
  sing->add_option("--measure", c.measures, "measure names");
  sing->add_option("--pair-entropy", c.pair_entropy_path)
      ->transform(CLI::CheckedTransformer(paths, CLI::ignore_case));
  sing->add_option("--negativity", c.negativity_path)
      ->transform(CLI::CheckedTransformer(paths, CLI::ignore_case));
  add_common(sing);

  auto* iso = app.add_subcommand("isocurve", "(u, n) samples at constant a");
  iso->add_option("--a", c.a, "correlation level")->required();
  add_u_range(iso);
  add_common(iso);

  auto* verify = app.add_subcommand("oracle-verify", "closed forms against the exact state");
  verify->add_option("--tol", c.tol, "override every tolerance");
  add_common(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << "error: " << e.what() << '\n';
    return static_cast<int>(Exit::validation);
  }
  c.subcommand = app.get_subcommands().front()->get_name();

  try {
    if (c.out.empty()) return static_cast<int>(run(c, std::cout, std::cerr));
    std::ostringstream buffer;
    const Exit code = run(c, buffer, std::cerr);
    if (code == Exit::validation) return static_cast<int>(code);
    std::ofstream f(c.out, std::ios::binary);
    if (!f) {
      std::cerr << "error: cannot open " << c.out << '\n';
      return static_cast<int>(Exit::validation);
    }
    f << buffer.str();
    return static_cast<int>(code);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return static_cast<int>(Exit::validation);
  }
}

}  // namespace etapair::cli
