#include "nevlab/run_config.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <ostream>

#include "nevlab/error.hpp"

#ifndef NEVLAB_VERSION
#define NEVLAB_VERSION "dev"
#endif

namespace nevlab {

namespace {

double parse_number(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size() || !std::isfinite(v))
    throw Error(ErrorCode::InvalidInput, what + ": '" + s + "' is not a number");
  return v;
}

}  // namespace

RadiiGrid RadiiGrid::parse(const std::string& text) {
  const auto a = text.find(':');
  const auto b = a == std::string::npos ? a : text.find(':', a + 1);
  if (a == std::string::npos || b == std::string::npos || text.find(':', b + 1) != std::string::npos)
    throw Error(ErrorCode::InvalidInput, "--radii: expected start:stop:step, got '" + text + "'");
  RadiiGrid g;
  g.start = parse_number(text.substr(0, a), "--radii start");
  g.stop = parse_number(text.substr(a + 1, b - a - 1), "--radii stop");
  g.step = parse_number(text.substr(b + 1), "--radii step");
  if (!(g.start < g.stop)) throw Error(ErrorCode::InvalidInput, "--radii: start must be below stop");
  if (!(g.step > 0)) throw Error(ErrorCode::InvalidInput, "--radii: step must be positive");
  if ((g.stop - g.start) / g.step > 1e6) throw Error(ErrorCode::InvalidInput, "--radii: more than 1e6 radii");
  return g;
}

std::vector<double> RadiiGrid::values() const {
  std::vector<double> v;
  for (long k = 0;; ++k) {
    const double r = start + static_cast<double>(k) * step;
    if (r > stop + step * 1e-9) break;
    v.push_back(r);
  }
  return v;
}

std::string RadiiGrid::str() const {
  return format_double(start) + ":" + format_double(stop) + ":" + format_double(step);
}

void RunConfig::validate() const {
  auto bad = [](const std::string& m) { throw Error(ErrorCode::InvalidInput, m); };
  if (surface != "plane" && surface != "disc") bad("--surface must be plane or disc");
  if (nodes < 8 || nodes > (1 << 22)) bad("--nodes must lie in [8, 4194304]");
  if (!(radius > 0) || !std::isfinite(radius)) bad("--radius must be positive");
  if (!(dt > 0) || dt > 1) bad("--dt must lie in (0, 1]");
  if (paths == 0) bad("--paths must be positive");
  if (order < 1 || order > 8) bad("--order must lie in [1, 8]");
  if (!(r_max > 0) || !(step > 0) || step > r_max) bad("--rmax and --step must satisfy 0 < step <= rmax");
  if (threads < 0) bad("--threads must be non-negative");
  if (surface == "disc" && radii.stop > 700 && (subcommand == "fmt" || subcommand == "ldl" || subcommand == "smt"))
    bad("--radii: geodesic radius above 700 is not representable on the disc");
}

std::vector<std::pair<std::string, std::string>> RunConfig::echo() const {
  std::vector<std::pair<std::string, std::string>> e;
  if (!input.empty()) e.emplace_back("in", input);
  if (subcommand == "fmt" || subcommand == "ldl" || subcommand == "smt") {
    e.emplace_back("surface", surface);
    e.emplace_back("radii", radii.str());
    e.emplace_back("nodes", std::to_string(nodes));
  }
  if (subcommand == "ldl") {
    e.emplace_back("order", std::to_string(order));
    e.emplace_back("c1", format_double(c1));
  }
  if (subcommand == "smt") {
    e.emplace_back("fit_tolerance", format_double(fit_tolerance));
    e.emplace_back("defect_slack", format_double(defect_slack));
  }
  if (subcommand == "bm") {
    e.emplace_back("surface", surface);
    e.emplace_back("radius", format_double(radius));
    e.emplace_back("dt", format_double(dt));
    e.emplace_back("paths", std::to_string(paths));
  }
  if (subcommand == "ode") {
    e.emplace_back("kappa", kappa);
    e.emplace_back("rmax", format_double(r_max));
    e.emplace_back("step", format_double(step));
  }
  if (subcommand == "verify") e.emplace_back("suite", suite);
  return e;
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_header(std::ostream& os, const RunConfig& cfg,
                  const std::vector<std::pair<std::string, std::string>>& results) {
  os << "# nevlab " << NEVLAB_VERSION << "\n";
  os << "# subcommand: " << cfg.subcommand << "\n";
  for (const auto& [k, v] : cfg.echo()) os << "# " << k << ": " << v << "\n";
  os << "# seed: " << cfg.seed << "\n";
  for (const auto& [k, v] : results) os << "# " << k << ": " << v << "\n";
  if (!cfg.deterministic) {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    os << "# timestamp: " << buf << "\n";
  }
}

void CsvTable::add(const std::vector<double>& row) {
  std::vector<std::string> cells;
  cells.reserve(row.size());
  for (double x : row) cells.push_back(format_double(x));
  add_cells(std::move(cells));
}

void CsvTable::add_cells(std::vector<std::string> row) {
  if (row.size() != columns_.size())
    throw Error(ErrorCode::DimensionMismatch, "CSV row has " + std::to_string(row.size()) + " cells, expected " +
                                                  std::to_string(columns_.size()));
  rows_.push_back(std::move(row));
}

void CsvTable::write(std::ostream& os) const {
  auto line = [&os](const std::vector<std::string>& cells) {
    for (std::size_t k = 0; k < cells.size(); ++k) os << (k ? "," : "") << cells[k];
    os << "\n";
  };
  line(columns_);
  for (const auto& r : rows_) line(r);
}

}  // namespace nevlab
