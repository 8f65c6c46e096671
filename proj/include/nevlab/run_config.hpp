#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace nevlab {

/// "start:stop:step" with start < stop, step > 0; both endpoints included
/// when stop lands on the grid (within step * 1e-9).
struct RadiiGrid {
  double start = 2.0, stop = 40.0, step = 1.0;
  static RadiiGrid parse(const std::string& text);
  std::vector<double> values() const;
  std::string str() const;
};

struct RunConfig {
  std::string subcommand;
  std::string input;            // --in
  std::string surface = "plane";
  RadiiGrid radii;
  int nodes = 4096;
  // Monte Carlo
  double radius = 1.0;
  double dt = 1e-4;
  std::size_t paths = 100000;
  std::uint64_t seed = 7;
  // ldl
  int order = 1;
  double c1 = 0.0;
  // ode
  std::string kappa = "{\"constant\":-1}";
  double r_max = 10.0;
  double step = 1e-3;
  // smt
  double fit_tolerance = 0.5;
  double defect_slack = 0.1;
  // verify
  std::string suite = "all";

  std::string out;  // empty or "-" writes to stdout
  int threads = 0;  // 0: NEVLAB_THREADS, then hardware concurrency; never echoed
  bool deterministic = false;

  /// InvalidInput on any out-of-range field.
  void validate() const;
  /// Settings relevant to the subcommand, in a fixed order.
  std::vector<std::pair<std::string, std::string>> echo() const;
};

/// 17 significant digits, "%.17g".
std::string format_double(double x);

/// Comment block: tool version, subcommand, config echo, seed, extra result
/// lines, and a timestamp unless deterministic.
void write_header(std::ostream& os, const RunConfig& cfg,
                  const std::vector<std::pair<std::string, std::string>>& results = {});

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}
  void add(const std::vector<double>& row);
  void add_cells(std::vector<std::string> row);
  void write(std::ostream& os) const;
  std::size_t rows() const { return rows_.size(); }
  const std::vector<std::string>& row(std::size_t i) const { return rows_.at(i); }

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<std::string>> rows_;
};

}  // namespace nevlab
