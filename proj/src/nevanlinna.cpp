#include "nevlab/nevanlinna.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "nevlab/fit.hpp"
#include "nevlab/quadrature.hpp"
#include "nevlab/roots.hpp"

namespace nevlab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

std::vector<CompiledExpr> compile(const HolomorphicCurve& f) {
  std::vector<CompiledExpr> out;
  for (const auto& c : f.components) out.emplace_back(c);
  return out;
}

double log_norm(const std::vector<CompiledExpr>& comps, std::complex<double> z) {
  double top = kNegInf;
  std::vector<double> logs;
  logs.reserve(comps.size());
  for (const auto& c : comps) {
    logs.push_back(c.evaluate_scaled(z).log_abs());
    top = std::max(top, logs.back());
  }
  if (top == kNegInf) throw Error(ErrorCode::NodeOnSingularity, "all components vanish at a node");
  double s = 0.0;
  for (double l : logs) s += std::exp(2.0 * (l - top));
  return top + 0.5 * std::log(s);
}

void require_centre(const HolomorphicCurve& f) {
  if (f.base_point != std::complex<double>(0.0, 0.0))
    throw Error(ErrorCode::InvalidInput, "model-surface functionals use the base point o = 0");
}

/// log|g(z)|; ZeroNearCircle when |g| is below 1e-9 of the term magnitude.
double log_abs_off_zero(const CompiledExpr& g, std::complex<double> z) {
  const double v = g.evaluate_scaled(z).log_abs();
  if (v < std::log(1e-9) + g.log_abs_term_sum(z))
    throw Error(ErrorCode::ZeroNearCircle, "zero within tolerance of the circle");
  return v;
}

std::complex<double> node(double R, double theta) { return std::polar(R, theta); }

GaussianRational exact_det(GaussianMatrix m) {
  const Eigen::Index n = m.rows();
  GaussianRational det(1);
  for (Eigen::Index c = 0; c < n; ++c) {
    Eigen::Index p = c;
    while (p < n && m(p, c).is_zero()) ++p;
    if (p == n) return GaussianRational(0);
    if (p != c) {
      m.row(p).swap(m.row(c));
      det = -det;
    }
    det = det * m(c, c);
    for (Eigen::Index r = c + 1; r < n; ++r) {
      if (m(r, c).is_zero()) continue;
      const GaussianRational f = m(r, c) / m(c, c);
      for (Eigen::Index k = c; k < n; ++k) m(r, k) = m(r, k) - f * m(c, k);
    }
  }
  return det;
}

double log_sum_exp(const std::vector<double>& v) {
  double top = kNegInf;
  for (double x : v) top = std::max(top, x);
  if (top == kNegInf) return kNegInf;
  double s = 0.0;
  for (double x : v) s += std::exp(x - top);
  return top + std::log(s);
}

}  // namespace

MeromorphicFn MeromorphicFn::derivative() const {
  if (denominator.is_constant()) return {numerator.derivative(), denominator};
  return {numerator.derivative() * denominator - numerator * denominator.derivative(), denominator * denominator};
}

MeromorphicFn MeromorphicFn::log_derivative_ratio(int k) const {
  MeromorphicFn d = *this;
  for (int i = 0; i < k; ++i) d = d.derivative();
  return {d.numerator * denominator, d.denominator * numerator};
}

ScaledValue MeromorphicFn::evaluate_scaled(std::complex<double> z) const {
  const ScaledValue n = CompiledExpr(numerator).evaluate_scaled(z);
  const ScaledValue d = CompiledExpr(denominator).evaluate_scaled(z);
  return {n.mantissa / d.mantissa, n.log_scale - d.log_scale};
}

double log_norm(const HolomorphicCurve& f, std::complex<double> z) { return log_norm(compile(f), z); }

double weil_function(const Hyperplane& h, const HolomorphicCurve& f) {
  require_centre(f);
  std::vector<std::complex<double>> w;
  for (const auto& c : f.components) w.push_back(c.evaluate(f.base_point));
  double nf = 0.0;
  for (auto x : w) nf += std::norm(x);
  nf = std::sqrt(nf);
  const double hw = std::abs(h.apply(w));
  if (hw <= 1e-12 * h.norm() * nf) throw Error(ErrorCode::BasePointOnDivisor, "f(o) lies on the hyperplane");
  return std::log(h.norm() * nf / hw);
}

double characteristic(const HolomorphicCurve& f, const ModelSurface& s, double r, int nodes) {
  require_centre(f);
  const auto comps = compile(f);
  const double R = s.coordinate_radius(r);
  const double mean = circle_mean([&](double th) { return log_norm(comps, node(R, th)); }, nodes);
  return mean - log_norm(comps, f.base_point);
}

double proximity(const HolomorphicCurve& f, const Hyperplane& h, const ModelSurface& s, double r, int nodes) {
  require_centre(f);
  const auto comps = compile(f);
  const EntireExpr g = compose(h, f);
  if (g.is_zero()) throw Error(ErrorCode::IdenticallyZero, "H o f vanishes identically");
  const double R = s.coordinate_radius(r);
  // Zeros close to the circle make log|g| nearly singular at the nodes. Their
  // factors are divided out and added back through the exact mean
  // (1/2pi) int log|R e^{it} - a| dt = log max(R, |a|).
  std::vector<Zero> near;
  double near_mean = 0.0;
  if (zero_set_supported(g)) {
    try {
      zero_divisor(g, R);
      for (const auto& zero : zero_divisor(g, 1.25 * R).zeros) {
        const double a = std::abs(zero.location);
        if (a < 0.8 * R) continue;
        near.push_back(zero);
        near_mean += zero.multiplicity * std::log(std::max(R, a));
      }
    } catch (const Error& e) {
      if (e.code() == ErrorCode::ZeroOnBoundary) throw Error(ErrorCode::ZeroNearCircle, e.what());
      throw;
    }
  }
  const CompiledExpr cg(g);
  const double hn = std::log(h.norm());
  return circle_mean(
             [&](double th) {
               const auto z = node(R, th);
               double v = hn + log_norm(comps, z) - log_abs_off_zero(cg, z);
               for (const auto& zero : near) v += zero.multiplicity * std::log(std::abs(z - zero.location));
               return v;
             },
             nodes) -
         near_mean;
}

double counting_zeros(const EntireExpr& g, const ModelSurface& s, double r, std::optional<int> truncation, int nodes,
                      const HolomorphicCurve* curve) {
  if (g.is_zero()) throw Error(ErrorCode::IdenticallyZero, "counting zeros of the zero function");
  const double R = s.coordinate_radius(r);
  if (truncation && *truncation <= 0) return 0.0;

  if (zero_set_supported(g)) {
    double sum = 0.0;
    for (const auto& z : zero_divisor(g, R).zeros) {
      const double a = std::abs(z.location);
      if (a <= std::max(1e-12, z.certified_radius))
        throw Error(ErrorCode::BasePointOnDivisor, "zero at the base point");
      const int mult = truncation ? std::min(z.multiplicity, *truncation) : z.multiplicity;
      sum += mult * std::log(R / a);
    }
    return sum;
  }

  // Jensen: N(r) = mean log|g| - log|g(0)|
  const CompiledExpr cg(g);
  const double at_centre = cg.evaluate_scaled(0.0).log_abs();
  if (at_centre < std::log(1e-12) + cg.log_abs_term_sum(0.0))
    throw Error(ErrorCode::BasePointOnDivisor, "zero at the base point");
  double n_value = circle_mean([&](double th) { return log_abs_off_zero(cg, node(R, th)); }, nodes) - at_centre;
  if (!truncation) return n_value;

  const int k = *truncation;
  std::optional<ZeroDivisor> candidates;
  for (int j = 1; j <= k && !candidates; ++j) {
    const EntireExpr dj = derivative(g, j);
    if (!dj.is_zero() && zero_set_supported(dj)) candidates = zero_divisor(dj, R);
  }
  if (!candidates && curve && k >= curve->dimension()) {
    const EntireExpr w = wronskian(curve->components);
    if (!w.is_zero() && zero_set_supported(w)) candidates = zero_divisor(w, R);
  }
  if (!candidates)
    throw Error(ErrorCode::UnsupportedZeroSet, "cannot locate multiple zeros of " + g.str() + " for truncation");
  for (const auto& z : candidates->zeros) {
    const int ord = numeric_order(g, z.location);
    if (ord > k) n_value -= (ord - k) * std::log(R / std::abs(z.location));
  }
  return n_value;
}

double counting(const HolomorphicCurve& f, const Hyperplane& h, const ModelSurface& s, double r,
                std::optional<int> truncation, int nodes) {
  require_centre(f);
  return counting_zeros(compose(h, f), s, r, truncation, nodes, &f);
}

double FmtSeries::max_deviation() const {
  double d = 0.0;
  for (const auto& row : rows) d = std::max(d, std::abs(row.residual - weil));
  return d;
}

FmtSeries fmt_residual(const HolomorphicCurve& f, const Hyperplane& h, const ModelSurface& s,
                       const std::vector<double>& radii, int nodes) {
  FmtSeries out;
  out.weil = weil_function(h, f);
  for (double r0 : radii) {
    FmtRow row;
    row.r = with_clean_radius(
        r0,
        [&](double r) {
          row.T = characteristic(f, s, r, nodes);
          row.m = proximity(f, h, s, r, nodes);
          row.N = counting(f, h, s, r, std::nullopt, nodes);
          row.Ntrunc = counting(f, h, s, r, f.dimension(), nodes);
        },
        &out.notes);
    row.residual = row.m + row.N - row.T;
    out.rows.push_back(row);
  }
  return out;
}

double proximity_infinity(const MeromorphicFn& psi, const ModelSurface& s, double r, int nodes) {
  const CompiledExpr num(psi.numerator), den(psi.denominator);
  const double R = s.coordinate_radius(r);
  return circle_mean(
      [&](double th) {
        const auto z = node(R, th);
        const double ln = num.evaluate_scaled(z).log_abs();
        if (ln == kNegInf) return 0.0;
        return std::max(0.0, ln - log_abs_off_zero(den, z));
      },
      nodes);
}

double t_of_meromorphic(const MeromorphicFn& psi, const ModelSurface& s, double r, int nodes) {
  const double m = proximity_infinity(psi, s, r, nodes);
  if (psi.denominator.is_constant()) return m;
  return m + counting_zeros(psi.denominator, s, r, std::nullopt, nodes);
}

double t_psi_phi(const MeromorphicFn& psi, const ModelSurface& s, double r) {
  const MeromorphicFn dlog = psi.log_derivative_ratio(1);
  if (dlog.numerator.is_zero()) return 0.0;
  const CompiledExpr pn(psi.numerator), pd(psi.denominator), dn(dlog.numerator), dd(dlog.denominator);
  const double R = s.coordinate_radius(r);
  const double t0 = std::log(1e-6), t1 = std::log(R);
  if (!(t1 > t0)) return 0.0;
  // Near a zero or pole a the integrand behaves like 1/(|z-a|^2 log^2|z-a|),
  // whose mass within eps of a is about 1/|log eps|. Log-radius nodes absorb
  // this at the centre only.
  for (const EntireExpr* e : {&psi.numerator, &psi.denominator}) {
    if (e->is_constant()) continue;
    if (!zero_set_supported(*e))
      throw Error(ErrorCode::NonConvergentQuadrature, "zeros of " + e->str() + " cannot be located");
    for (const auto& zero : zero_divisor(*e, 1.01 * R).zeros)
      if (std::abs(zero.location) > 1e-6)
        throw Error(ErrorCode::NonConvergentQuadrature,
                    "zero or pole off the centre; the polar rule cannot resolve its logarithmic mass");
  }

  auto evaluate = [&](int panels, int angles) {
    auto radial = [&](double t) {
      const double rho = std::exp(t);
      const double ring = circle_mean(
          [&](double th) {
            const auto z = node(rho, th);
            const double lpsi = pn.evaluate_scaled(z).log_abs() - pd.evaluate_scaled(z).log_abs();
            const double ld = dn.evaluate_scaled(z).log_abs() - dd.evaluate_scaled(z).log_abs();
            if (!std::isfinite(lpsi) || !std::isfinite(ld)) return 0.0;  // excluded disc
            return std::exp(2.0 * ld) / (1.0 + lpsi * lpsi);
          },
          angles);
      return std::log(R / rho) / kPi * rho * rho * ring;
    };
    return integrate(radial, t0, t1, 16, panels);
  };

  int panels = std::max(4, static_cast<int>(std::ceil(2.0 * (t1 - t0))));
  int angles = 128;
  double prev = evaluate(panels, angles);
  for (int level = 0; level < 6; ++level) {
    panels *= 2;
    angles *= 2;
    const double next = evaluate(panels, angles);
    if (std::abs(next - prev) <= 1e-3 * std::max(1.0, std::abs(next))) return next;
    prev = next;
  }
  throw Error(ErrorCode::NonConvergentQuadrature, "area quadrature did not settle to 1e-3");
}

double LdlReport::max_excess() const {
  double e = kNegInf;
  for (const auto& row : rows) e = std::max(e, row.excess);
  return e;
}

double LdlReport::violation_fraction() const {
  if (rows.empty()) return 0.0;
  std::size_t bad = 0;
  for (const auto& row : rows)
    if (row.excess > c1 + 1e-9) ++bad;
  return static_cast<double>(bad) / static_cast<double>(rows.size());
}

double LdlReport::min_margin() const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& row : rows) m = std::min(m, row.leading - row.m);
  return m;
}

LdlReport ldl_check(const MeromorphicFn& psi, const ModelSurface& s, const std::vector<double>& radii, int k,
                    int nodes, double c1) {
  if (k < 1) throw Error(ErrorCode::InvalidInput, "derivative order must be >= 1");
  if (psi.numerator.is_zero() || psi.denominator.is_zero() ||
      (psi.numerator.is_constant() && psi.denominator.is_constant()))
    throw Error(ErrorCode::InvalidInput, "psi must be non-constant");
  const MeromorphicFn ratio = psi.log_derivative_ratio(k);
  LdlReport rep;
  rep.order = k;
  rep.c1 = c1;
  for (double r0 : radii) {
    LdlRow row;
    row.r = with_clean_radius(r0, [&](double r) {
      row.m = ratio.numerator.is_zero() ? 0.0 : proximity_infinity(ratio, s, r, nodes);
      row.T = t_of_meromorphic(psi, s, r, nodes);
    });
    row.leading = 1.5 * k * std::log(row.T);
    const double llT = row.T > 1.0 ? std::max(0.0, std::log(std::log(row.T))) : 0.0;
    const double llr = row.r > 1.0 ? std::max(0.0, std::log(std::log(row.r))) : 0.0;
    row.error_term = llT - s.kappa() * row.r * row.r + llr;
    rep.rows.push_back(row);
  }
  const auto n = static_cast<Eigen::Index>(rep.rows.size());
  Eigen::MatrixXd a(n, 2);
  Eigen::VectorXd b(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& row = rep.rows[static_cast<std::size_t>(i)];
    a(i, 0) = row.error_term;
    a(i, 1) = 1.0;
    b(i) = row.m - row.leading;
  }
  if (n > 0) rep.c0 = nnls(a, b).x(0);
  for (auto& row : rep.rows) row.excess = row.m - row.leading - rep.c0 * row.error_term;
  return rep;
}

SmtReport smt_margin(const HolomorphicCurve& f, const HyperplaneFamily& family, const NochkaWeights& w,
                     const ModelSurface& s, const std::vector<double>& radii, int nodes) {
  require_centre(f);
  if (f.dimension() != family.n) throw Error(ErrorCode::DimensionMismatch, "curve and hyperplanes differ in n");
  const EntireExpr wr = wronskian(f.components);
  if (wr.is_zero()) throw Error(ErrorCode::Degenerate, "curve is linearly degenerate (W == 0)");
  if (!check_position(family))
    throw Error(ErrorCode::PositionViolated, "family is not in " + std::to_string(family.N) + "-subgeneral position");
  const CompiledExpr cw(wr);
  if (cw.evaluate_scaled(f.base_point).log_abs() < std::log(1e-12) + cw.log_abs_term_sum(f.base_point))
    throw Error(ErrorCode::BasePointOnDivisor, "base point is a zero of W");
  for (const auto& h : family.hyperplanes) weil_function(h, f);
  if (const WeightCheck c = verify_weights(family, w); !c.ok)
    throw Error(ErrorCode::InvalidInput, "weights rejected: " + c.failure);

  SmtReport rep;
  const int q = family.q();
  rep.coefficient = q - 2 * family.N + family.n - 1;
  rep.defect_budget = 2 * family.N - family.n + 1;
  const double coef = rep.coefficient.get_d();
  for (double r0 : radii) {
    SmtRow row;
    row.r = with_clean_radius(
        r0,
        [&](double r) {
          row.m.clear();
          row.N.clear();
          row.Ntrunc.clear();
          row.T = characteristic(f, s, r, nodes);
          for (const auto& h : family.hyperplanes) {
            row.m.push_back(proximity(f, h, s, r, nodes));
            row.N.push_back(counting(f, h, s, r, std::nullopt, nodes));
            row.Ntrunc.push_back(counting(f, h, s, r, family.n, nodes));
          }
        },
        &rep.notes);
    row.lhs = coef * row.T;
    row.counted = pairwise_sum(row.Ntrunc);
    row.margin = row.lhs - row.counted;
    rep.rows.push_back(std::move(row));
  }
  if (rep.rows.empty()) return rep;

  const auto n = static_cast<Eigen::Index>(rep.rows.size());
  Eigen::MatrixXd a(n, 2);
  Eigen::VectorXd b(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& row = rep.rows[static_cast<std::size_t>(i)];
    a(i, 0) = std::log(row.T);
    a(i, 1) = 1.0;
    b(i) = row.margin;
  }
  const NnlsResult fit = nnls(a, b);
  rep.fit_a = fit.x(0);
  rep.fit_c = fit.x(1);
  rep.max_fit_excess = fit.residual.maxCoeff();

  const std::size_t tail = std::max<std::size_t>(1, rep.rows.size() / 4);
  for (int j = 0; j < q; ++j) {
    double sup = 0.0;
    for (std::size_t i = rep.rows.size() - tail; i < rep.rows.size(); ++i) {
      const auto& row = rep.rows[i];
      if (row.T > 0) sup = std::max(sup, row.Ntrunc[static_cast<std::size_t>(j)] / row.T);
    }
    rep.defects.push_back(std::clamp(1.0 - sup, 0.0, 1.0));
  }
  rep.defect_sum = pairwise_sum(rep.defects);
  return rep;
}

std::vector<QuotientRow> quotient_characteristics(const HolomorphicCurve& f, const ModelSurface& s,
                                                  const std::vector<double>& radii, int nodes) {
  require_centre(f);
  const int n1 = static_cast<int>(f.components.size());
  const double lnf0 = log_norm(f, f.base_point);
  std::vector<QuotientRow> rows;
  for (double r0 : radii) {
    QuotientRow row;
    row.r = with_clean_radius(r0, [&](double r) {
      row.T = characteristic(f, s, r, nodes);
      row.worst = kNegInf;
      for (int k = 0; k < n1; ++k) {
        const auto& fk = f.components[static_cast<std::size_t>(k)];
        if (fk.is_zero()) continue;
        const double ck = lnf0 - CompiledExpr(fk).evaluate_scaled(f.base_point).log_abs();
        if (!std::isfinite(ck)) continue;  // f_k(o) = 0: the constant is infinite
        for (int j = 0; j < n1; ++j) {
          if (j == k) continue;
          const MeromorphicFn q{f.components[static_cast<std::size_t>(j)], fk};
          if (q.numerator.is_zero()) continue;
          row.worst = std::max(row.worst, t_of_meromorphic(q, s, r, nodes) - ck);
        }
      }
    });
    rows.push_back(row);
  }
  return rows;
}

double PointwiseReport::min_log_ratio() const {
  double m = std::numeric_limits<double>::infinity();
  for (double v : log_ratio) m = std::min(m, v);
  return m;
}

PointwiseReport pointwise_ratio(const HolomorphicCurve& f, const HyperplaneFamily& family, const NochkaWeights& w,
                                const ModelSurface& s, double r, int n_points, std::uint64_t seed) {
  const int q = family.q(), n = family.n;
  const auto comps = compile(f);
  std::vector<CompiledExpr> gs;
  for (const auto& h : family.hyperplanes) gs.emplace_back(compose(h, f));
  // |det A_Q| for the (n+1)-subsets of full rank
  std::vector<std::pair<std::vector<int>, double>> bases;
  const GaussianMatrix a = family.coefficient_matrix();
  for_each_subset_of_size(q, n + 1, [&](IndexMask m) {
    const auto idx = mask_to_indices(m);
    GaussianMatrix sub(n + 1, n + 1);
    for (int i = 0; i <= n; ++i) sub.row(i) = a.row(idx[static_cast<std::size_t>(i)]);
    const GaussianRational d = exact_det(sub);
    if (!d.is_zero()) bases.emplace_back(idx, 0.5 * std::log(d.norm_sq().get_d()));
  });
  const double power = Rational(w.gamma * (q - 2 * family.N + n - 1)).get_d();

  PointwiseReport rep;
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> uni;
  const double R = s.coordinate_radius(r);
  int attempts = 0;
  while (static_cast<int>(rep.points.size()) < n_points && attempts < 100 * n_points) {
    ++attempts;
    const std::complex<double> z = std::polar(R * std::sqrt(uni(gen)), 2.0 * kPi * uni(gen));
    std::vector<double> lg(static_cast<std::size_t>(q));
    bool near_zero = false;
    for (int j = 0; j < q; ++j) {
      const auto& g = gs[static_cast<std::size_t>(j)];
      lg[static_cast<std::size_t>(j)] = g.evaluate_scaled(z).log_abs();
      if (lg[static_cast<std::size_t>(j)] < std::log(1e-6) + g.log_abs_term_sum(z)) near_zero = true;
    }
    if (near_zero) continue;
    double rhs = 0.0;
    for (int j = 0; j < q; ++j) rhs += w.gamma_j[static_cast<std::size_t>(j)].get_d() * lg[static_cast<std::size_t>(j)];
    std::vector<double> terms;
    for (const auto& [idx, logdet] : bases) {
      double t = logdet;
      for (int j : idx) t -= lg[static_cast<std::size_t>(j)];
      terms.push_back(t);
    }
    rhs += log_sum_exp(terms);
    rep.points.push_back(z);
    rep.log_ratio.push_back(rhs - power * log_norm(comps, z));
  }
  return rep;
}

}  // namespace nevlab
