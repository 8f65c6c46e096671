#include "nevlab/exact_lp.hpp"

#include <optional>

#include "nevlab/error.hpp"

namespace nevlab {

namespace {

/// Dense tableau: rows 0..m-1 are constraints, row m is the objective row
/// holding reduced costs (negated, so a negative entry marks an improving
/// column); the last column is the right-hand side.
class Tableau {
 public:
  Tableau(Eigen::Index rows, Eigen::Index cols) : t_(rows + 1, cols + 1), basis_(static_cast<std::size_t>(rows), -1) {
    t_.setConstant(Rational(0));
  }

  Rational& at(Eigen::Index r, Eigen::Index c) { return t_(r, c); }
  Rational& rhs(Eigen::Index r) { return t_(r, t_.cols() - 1); }
  Eigen::Index rows() const { return t_.rows() - 1; }
  Eigen::Index cols() const { return t_.cols() - 1; }
  std::vector<Eigen::Index>& basis() { return basis_; }

  void pivot(Eigen::Index pr, Eigen::Index pc) {
    const Rational inv = 1 / t_(pr, pc);
    for (Eigen::Index c = 0; c < t_.cols(); ++c)
      if (sgn(t_(pr, c)) != 0) t_(pr, c) *= inv;
    for (Eigen::Index r = 0; r < t_.rows(); ++r) {
      if (r == pr || sgn(t_(r, pc)) == 0) continue;
      const Rational f = t_(r, pc);
      for (Eigen::Index c = 0; c < t_.cols(); ++c)
        if (sgn(t_(pr, c)) != 0) t_(r, c) -= f * t_(pr, c);
    }
    basis_[static_cast<std::size_t>(pr)] = pc;
  }

  /// Installs `cost` (maximised) as the objective row, priced out on the basis.
  void set_objective(const std::vector<Rational>& cost) {
    const Eigen::Index m = rows();
    for (Eigen::Index c = 0; c < t_.cols(); ++c) t_(m, c) = 0;
    for (Eigen::Index c = 0; c < cols(); ++c) t_(m, c) = -cost[static_cast<std::size_t>(c)];
    for (Eigen::Index r = 0; r < m; ++r) {
      const Eigen::Index b = basis_[static_cast<std::size_t>(r)];
      if (sgn(t_(m, b)) == 0) continue;
      const Rational f = t_(m, b);
      for (Eigen::Index c = 0; c < t_.cols(); ++c) t_(m, c) -= f * t_(r, c);
    }
  }

  /// Bland's rule iterations over the allowed columns. Returns false when
  /// unbounded.
  bool optimise(Eigen::Index allowed_cols) {
    const Eigen::Index m = rows();
    for (;;) {
      Eigen::Index enter = -1;
      for (Eigen::Index c = 0; c < allowed_cols; ++c)
        if (sgn(t_(m, c)) < 0) {
          enter = c;
          break;
        }
      if (enter < 0) return true;
      Eigen::Index leave = -1;
      Rational best;
      for (Eigen::Index r = 0; r < m; ++r) {
        if (sgn(t_(r, enter)) <= 0) continue;
        Rational ratio = rhs(r) / t_(r, enter);
        if (leave < 0 || ratio < best ||
            (ratio == best && basis_[static_cast<std::size_t>(r)] < basis_[static_cast<std::size_t>(leave)])) {
          leave = r;
          best = std::move(ratio);
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
  }

  Rational objective_value() { return t_(rows(), t_.cols() - 1); }

 private:
  RationalMatrix t_;
  std::vector<Eigen::Index> basis_;
};

}  // namespace

LpResult solve_lp(const LinearProgram& lp) {
  const auto n = static_cast<Eigen::Index>(lp.num_vars);
  const auto m = static_cast<Eigen::Index>(lp.rows.size());
  if (static_cast<Eigen::Index>(lp.objective.size()) != n)
    throw Error(ErrorCode::InvalidInput, "objective length differs from variable count");

  // Column layout: [structural | slack/surplus | artificial].
  Eigen::Index n_slack = 0, n_art = 0;
  std::vector<Sense> senses;
  std::vector<bool> flipped;
  for (const auto& row : lp.rows) {
    if (static_cast<Eigen::Index>(row.coefficients.size()) != n)
      throw Error(ErrorCode::InvalidInput, "constraint length differs from variable count");
    const bool flip = sgn(row.rhs) < 0;
    Sense s = row.sense;
    if (flip && s != Sense::Equal) s = (s == Sense::LessEqual) ? Sense::GreaterEqual : Sense::LessEqual;
    senses.push_back(s);
    flipped.push_back(flip);
    if (s != Sense::Equal) ++n_slack;
    if (s != Sense::LessEqual) ++n_art;
  }
  const Eigen::Index total = n + n_slack + n_art;
  Tableau tab(m, total);
  Eigen::Index slack_col = n, art_col = n + n_slack;
  for (Eigen::Index r = 0; r < m; ++r) {
    const auto& row = lp.rows[static_cast<std::size_t>(r)];
    const bool flip = flipped[static_cast<std::size_t>(r)];
    for (Eigen::Index c = 0; c < n; ++c) {
      const Rational& a = row.coefficients[static_cast<std::size_t>(c)];
      tab.at(r, c) = flip ? Rational(-a) : a;
    }
    tab.rhs(r) = flip ? Rational(-row.rhs) : row.rhs;
    switch (senses[static_cast<std::size_t>(r)]) {
      case Sense::LessEqual:
        tab.at(r, slack_col) = 1;
        tab.basis()[static_cast<std::size_t>(r)] = slack_col++;
        break;
      case Sense::GreaterEqual:
        tab.at(r, slack_col++) = -1;
        tab.at(r, art_col) = 1;
        tab.basis()[static_cast<std::size_t>(r)] = art_col++;
        break;
      case Sense::Equal:
        tab.at(r, art_col) = 1;
        tab.basis()[static_cast<std::size_t>(r)] = art_col++;
        break;
    }
  }

  LpResult result;
  if (n_art > 0) {
    std::vector<Rational> phase1(static_cast<std::size_t>(total), Rational(0));
    for (Eigen::Index c = n + n_slack; c < total; ++c) phase1[static_cast<std::size_t>(c)] = -1;
    tab.set_objective(phase1);
    tab.optimise(total);
    if (sgn(tab.objective_value()) != 0) return result;  // Infeasible
    // Pivot zero-level artificials out of the basis where possible.
    for (Eigen::Index r = 0; r < m; ++r) {
      if (tab.basis()[static_cast<std::size_t>(r)] < n + n_slack) continue;
      for (Eigen::Index c = 0; c < n + n_slack; ++c)
        if (sgn(tab.at(r, c)) != 0) {
          tab.pivot(r, c);
          break;
        }
    }
  }

  std::vector<Rational> cost(static_cast<std::size_t>(total), Rational(0));
  for (Eigen::Index c = 0; c < n; ++c) cost[static_cast<std::size_t>(c)] = lp.objective[static_cast<std::size_t>(c)];
  tab.set_objective(cost);
  if (!tab.optimise(n + n_slack)) {
    result.status = LpStatus::Unbounded;
    return result;
  }

  result.status = LpStatus::Optimal;
  result.x.assign(static_cast<std::size_t>(n), Rational(0));
  for (Eigen::Index r = 0; r < m; ++r) {
    const Eigen::Index b = tab.basis()[static_cast<std::size_t>(r)];
    if (b < n) result.x[static_cast<std::size_t>(b)] = tab.rhs(r);
  }
  result.value = 0;
  for (Eigen::Index c = 0; c < n; ++c) result.value += lp.objective[static_cast<std::size_t>(c)] * result.x[static_cast<std::size_t>(c)];
  return result;
}

}  // namespace nevlab
