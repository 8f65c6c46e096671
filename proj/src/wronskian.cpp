#include "nevlab/wronskian.hpp"

#include <bit>
#include <cmath>
#include <limits>

#include <Eigen/LU>

#include "nevlab/error.hpp"
#include "nevlab/roots.hpp"

namespace nevlab {

EntireExpr VectorField::apply(const EntireExpr& e) const {
  if (a == EntireExpr(GaussianRational(1))) return e.derivative();
  return a * e.derivative();
}

EntireExpr VectorField::apply(const EntireExpr& e, int order) const {
  EntireExpr d = e;
  for (int k = 0; k < order; ++k) d = apply(d);
  return d;
}

ScaledValue MeromorphicPair::evaluate_scaled(std::complex<double> z) const {
  const ScaledValue n = CompiledExpr(numerator).evaluate_scaled(z);
  const ScaledValue d = CompiledExpr(denominator).evaluate_scaled(z);
  return {n.mantissa / d.mantissa, n.log_scale - d.log_scale};
}

std::complex<double> MeromorphicPair::evaluate(std::complex<double> z) const { return evaluate_scaled(z).value(); }

EntireExpr wronskian(const std::vector<EntireExpr>& fs, const VectorField& x) {
  const int size = static_cast<int>(fs.size());
  if (size == 0) return EntireExpr(GaussianRational(1));
  if (size > 20) throw Error(ErrorCode::InvalidInput, "Wronskian size too large");
  // rows[j][i] = X^j(f_i)
  std::vector<std::vector<EntireExpr>> rows(static_cast<std::size_t>(size));
  rows[0] = fs;
  for (int j = 1; j < size; ++j)
    for (int i = 0; i < size; ++i) rows[static_cast<std::size_t>(j)].push_back(x.apply(rows[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(i)]));

  // Laplace expansion by rows over column subsets: minors[S] is the
  // determinant of rows 0..|S|-1 restricted to the columns in S.
  std::vector<EntireExpr> minors(std::size_t{1} << size);
  minors[0] = EntireExpr(GaussianRational(1));
  for (std::uint32_t s = 0; s < (1U << size); ++s) {
    if (minors[s].is_zero()) continue;
    const int r = std::popcount(s);
    if (r == size) continue;
    for (int c = 0; c < size; ++c) {
      if (s & (1U << c)) continue;
      const EntireExpr& entry = rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
      if (entry.is_zero()) continue;
      const int above = std::popcount(s >> (c + 1));
      EntireExpr term = entry * minors[s];
      if (above % 2)
        minors[s | (1U << c)] -= std::move(term);
      else
        minors[s | (1U << c)] += std::move(term);
    }
  }
  return minors[(std::size_t{1} << size) - 1];
}

MeromorphicPair log_wronskian(const std::vector<EntireExpr>& fs, const VectorField& x) {
  EntireExpr den(GaussianRational(1));
  for (std::size_t i = 0; i < fs.size(); ++i) {
    if (fs[i].is_zero())
      throw Error(ErrorCode::IdenticallyZeroComponent, "component " + std::to_string(i) + " is identically zero");
    den *= fs[i];
  }
  return {wronskian(fs, x), den};
}

int numeric_order(const EntireExpr& e, std::complex<double> a) {
  if (e.is_zero()) throw Error(ErrorCode::IdenticallyZero, "order of the zero function");
  EntireExpr d = e;
  for (int k = 0; k < 64; ++k) {
    const CompiledExpr ce(d);
    const double v = ce.evaluate_scaled(a).log_abs();
    if (v > std::log(1e-9) + ce.log_abs_term_sum(a)) return k;
    d = d.derivative();
  }
  throw Error(ErrorCode::InvalidInput, "vanishing order exceeds 64");
}

int ord_at(const EntireExpr& e, const GaussianRational& a) {
  if (e.is_zero()) throw Error(ErrorCode::IdenticallyZero, "order of the zero function");
  if (e.is_single_direction()) return root_multiplicity(e.terms()[0].poly, a);
  return numeric_order(e, a.to_complex());
}

int ord_at(const EntireExpr& e, std::complex<double> a) {
  if (e.is_zero()) throw Error(ErrorCode::IdenticallyZero, "order of the zero function");
  if (e.is_single_direction()) return polynomial_zeros(e.terms()[0].poly).multiplicity_at(a);
  if (zero_set_supported(e)) {
    const double r = std::abs(a) + 1.0;
    try {
      return zero_divisor(e, r).multiplicity_at(a);
    } catch (const Error& err) {
      if (err.code() != ErrorCode::ZeroOnBoundary) throw;
      return zero_divisor(e, r + 0.5).multiplicity_at(a);
    }
  }
  return numeric_order(e, a);
}

int ord_at(const MeromorphicPair& m, std::complex<double> a) {
  return ord_at(m.numerator, a) - ord_at(m.denominator, a);
}

int ord_at(const MeromorphicPair& m, const GaussianRational& a) {
  return ord_at(m.numerator, a) - ord_at(m.denominator, a);
}

bool is_linearly_nondegenerate(const HolomorphicCurve& f, const VectorField& x) {
  return !wronskian(f.components, x).is_zero();
}

int collocation_rank(const std::vector<EntireExpr>& fs, const std::vector<GaussianRational>& points) {
  bool all_poly = true;
  for (const auto& f : fs) all_poly = all_poly && f.is_polynomial();
  const auto rows = static_cast<Eigen::Index>(points.size());
  const auto cols = static_cast<Eigen::Index>(fs.size());
  if (all_poly) {
    GaussianMatrix m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r)
      for (Eigen::Index c = 0; c < cols; ++c) {
        const auto& f = fs[static_cast<std::size_t>(c)];
        m(r, c) = f.is_zero() ? GaussianRational(0) : f.terms()[0].poly.evaluate(points[static_cast<std::size_t>(r)]);
      }
    return exact_rank(std::move(m));
  }
  // Values are taken in log-scaled form and equilibrated by rows and columns
  // alternately; exponential factors otherwise spread a row over e^{+-30}.
  std::vector<ScaledValue> v(static_cast<std::size_t>(rows * cols));
  Eigen::MatrixXd logs = Eigen::MatrixXd::Constant(rows, cols, -std::numeric_limits<double>::infinity());
  for (Eigen::Index c = 0; c < cols; ++c) {
    const CompiledExpr ce(fs[static_cast<std::size_t>(c)]);
    for (Eigen::Index r = 0; r < rows; ++r) {
      auto& sv = v[static_cast<std::size_t>(c * rows + r)];
      sv = ce.evaluate_scaled(points[static_cast<std::size_t>(r)].to_complex());
      logs(r, c) = sv.log_abs();
    }
  }
  Eigen::VectorXd row_shift = Eigen::VectorXd::Zero(rows), col_shift = Eigen::VectorXd::Zero(cols);
  for (int sweep = 0; sweep < 8; ++sweep) {
    for (Eigen::Index r = 0; r < rows; ++r) {
      const double mx = (logs.row(r).transpose() - col_shift).maxCoeff();
      if (std::isfinite(mx)) row_shift[r] = mx;
    }
    for (Eigen::Index c = 0; c < cols; ++c) {
      const double mx = (logs.col(c) - row_shift).maxCoeff();
      if (std::isfinite(mx)) col_shift[c] = mx;
    }
  }
  Eigen::MatrixXcd m(rows, cols);
  for (Eigen::Index c = 0; c < cols; ++c)
    for (Eigen::Index r = 0; r < rows; ++r) {
      const auto& sv = v[static_cast<std::size_t>(c * rows + r)];
      m(r, c) = std::isfinite(logs(r, c)) ? sv.mantissa * std::exp(sv.log_scale - row_shift[r] - col_shift[c]) : 0.0;
    }
  Eigen::FullPivLU<Eigen::MatrixXcd> lu(m);
  lu.setThreshold(1e-10);
  return static_cast<int>(lu.rank());
}

bool DivisorReport::holds() const {
  for (const auto& p : points)
    if (!p.holds()) return false;
  return true;
}

DivisorReport divisor_inequality(const HolomorphicCurve& f, const HyperplaneFamily& family, const NochkaWeights& w,
                                 double radius, const VectorField& x) {
  const EntireExpr wr = wronskian(f.components, x);
  if (wr.is_zero()) throw Error(ErrorCode::Degenerate, "Wronskian vanishes identically");
  std::vector<EntireExpr> composed;
  for (const auto& h : family.hyperplanes) composed.push_back(compose(h, f));

  std::vector<std::complex<double>> candidates;
  auto add_candidate = [&](std::complex<double> z) {
    for (const auto& c : candidates)
      if (std::abs(c - z) <= 1e-9 * (1.0 + std::abs(z))) return;
    candidates.push_back(z);
  };
  for (const auto& z : zero_divisor(wr, radius).zeros) add_candidate(z.location);
  for (const auto& g : composed) {
    if (!zero_set_supported(g)) continue;
    for (const auto& z : zero_divisor(g, radius).zeros)
      if (z.multiplicity > family.n) add_candidate(z.location);
  }

  DivisorReport report;
  for (const auto& a : candidates) {
    DivisorPoint p;
    p.location = a;
    p.wronskian_order = ord_at(wr, a);
    for (int j = 0; j < family.q(); ++j) {
      const int excess = ord_at(composed[static_cast<std::size_t>(j)], a) - family.n;
      if (excess > 0) p.weighted_excess += w.gamma_j[static_cast<std::size_t>(j)] * excess;
    }
    report.points.push_back(std::move(p));
  }
  return report;
}

}  // namespace nevlab
