#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "etapair/measures.hpp"
#include "etapair/qmeasure.hpp"

namespace etapair::cli {

enum class Exit : int { ok = 0, validation = 1, oracle_failure = 2 };

struct RunConfig {
  std::string subcommand;

  std::optional<double> n;
  std::optional<double> u;
  std::optional<double> a;

  std::optional<double> u_min, u_max, u_step;
  std::optional<double> n_min, n_max, n_step;

  // phase grid resolution (cells per axis)
  std::int64_t n_res = 200;
  std::int64_t u_res = 200;
  std::vector<double> contour_levels;
  std::string contour_out;

  double L = 1000.0;
  double N = 500.0;
  std::vector<std::int64_t> D;

  QMode mode = QMode::paper_product;
  PartitionCounting counting = PartitionCounting::combinatorial;
  FormulaPath pair_entropy_path = FormulaPath::spectrum;
  FormulaPath negativity_path = FormulaPath::printed;
  LogBase base = LogBase::bits;

  std::vector<std::string> measures;
  std::optional<double> tol;
  std::string out;
};

/// Shortest round-trip decimal form ('.' separator, at most 17 significant digits).
std::string format_double(double v);

/// One-line "# ..." record of every field, in a fixed order.
std::string config_comment(const RunConfig& c);

/// Throws std::invalid_argument with a one-line message on the first bad field.
void validate(const RunConfig& c);

/// Runs a validated subcommand and writes its CSV to `out`. Returns the exit code.
Exit run(const RunConfig& c, std::ostream& out, std::ostream& err);

/// Full command-line entry: parsing, validation, output file handling.
int main_entry(int argc, char** argv);

}  // namespace etapair::cli
