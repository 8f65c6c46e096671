#pragma once

#include <vector>

#include "nevlab/rational.hpp"

namespace nevlab {

enum class Sense { LessEqual, GreaterEqual, Equal };

struct LinearConstraint {
  std::vector<Rational> coefficients;
  Sense sense = Sense::LessEqual;
  Rational rhs{0};
};

/// maximize objective . x  subject to rows, x >= 0 (all exact).
struct LinearProgram {
  int num_vars = 0;
  std::vector<LinearConstraint> rows;
  std::vector<Rational> objective;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  std::vector<Rational> x;
  Rational value{0};
};

/// Two-phase dense-tableau simplex with Bland's rule. Exact, so it always
/// terminates and the returned vertex depends only on the input.
LpResult solve_lp(const LinearProgram& lp);

}  // namespace nevlab
