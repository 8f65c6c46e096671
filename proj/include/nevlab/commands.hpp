#pragma once

#include <iosfwd>
#include <string>

#include "nevlab/run_config.hpp"
#include "nevlab/stochastic.hpp"

namespace nevlab {

enum ExitStatus : int { kExitOk = 0, kExitInputError = 1, kExitCheckFailed = 2 };

/// Summary of one exit-time run: mean tau against the co-area value, the
/// 4 r^2 bound, exit-angle uniformity, and with `functionals` the occupation
/// integrals of rho^2 and rho cos(theta) plus Dynkin for log(1 + |z|^2).
/// Columns: quantity, estimate, std_error, reference, z_score, pass.
CsvTable bm_table(const PathConfig& cfg, bool functionals, int threads, bool* all_pass);

/// Full CSV document (header and table) as the `bm` subcommand writes it.
std::string bm_document(const RunConfig& cfg, bool functionals, bool* all_pass);

/// Runs one subcommand; CSV goes to cfg.out (stdout when empty or "-"),
/// diagnostics to err. Library errors map to kExitInputError.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace nevlab
