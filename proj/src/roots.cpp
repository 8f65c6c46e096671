#include "nevlab/roots.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "nevlab/error.hpp"

namespace nevlab {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kBoundaryTol = 1e-9;

struct PolyEval {
  std::complex<double> p, dp;
  double abs_bound;  // sum |c_k| |z|^k, scale of the rounding error in p
};

PolyEval eval_with_derivative(const std::vector<std::complex<double>>& c, std::complex<double> z) {
  std::complex<double> p{}, dp{};
  double bound = 0.0;
  const double az = std::abs(z);
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    dp = dp * z + p;
    p = p * z + *it;
    bound = bound * az + std::abs(*it);
  }
  return {p, dp, bound};
}

void sort_zeros(std::vector<Zero>& zs) {
  std::sort(zs.begin(), zs.end(), [](const Zero& a, const Zero& b) {
    const double ma = std::abs(a.location), mb = std::abs(b.location);
    if (ma != mb) return ma < mb;
    return std::arg(a.location) < std::arg(b.location);
  });
}

bool discs_disjoint(const std::vector<Zero>& zs) {
  for (std::size_t i = 0; i < zs.size(); ++i)
    for (std::size_t j = i + 1; j < zs.size(); ++j)
      if (std::abs(zs[i].location - zs[j].location) <= zs[i].certified_radius + zs[j].certified_radius) return false;
  return true;
}

std::vector<Zero> run_aberth(const std::vector<std::complex<double>>& c, int max_iter, double angle_offset) {
  const int d = static_cast<int>(c.size()) - 1;
  // Fujiwara-type bound on the root moduli.
  double bound = 0.0;
  for (int k = 0; k < d; ++k)
    bound = std::max(bound, std::pow(std::abs(c[static_cast<std::size_t>(k)] / c.back()), 1.0 / (d - k)));
  bound = std::max(2.0 * bound, 1e-3);
  std::vector<std::complex<double>> z(static_cast<std::size_t>(d));
  for (int k = 0; k < d; ++k)
    z[static_cast<std::size_t>(k)] =
        std::polar(0.5 * bound, 2.0 * std::numbers::pi * k / d + angle_offset);

  std::vector<bool> done(static_cast<std::size_t>(d), false);
  for (int it = 0; it < max_iter; ++it) {
    bool all_done = true;
    for (int k = 0; k < d; ++k) {
      const auto uk = static_cast<std::size_t>(k);
      if (done[uk]) continue;
      const PolyEval e = eval_with_derivative(c, z[uk]);
      if (std::abs(e.p) <= 4.0 * kEps * e.abs_bound) {
        done[uk] = true;
        continue;
      }
      const std::complex<double> ratio = e.p / e.dp;
      std::complex<double> sum{};
      for (int j = 0; j < d; ++j)
        if (j != k) sum += 1.0 / (z[uk] - z[static_cast<std::size_t>(j)]);
      const std::complex<double> step = ratio / (1.0 - ratio * sum);
      z[uk] -= step;
      if (std::abs(step) <= 4.0 * kEps * (1.0 + std::abs(z[uk])))
        done[uk] = true;
      else
        all_done = false;
    }
    if (all_done) break;
  }

  std::vector<Zero> out;
  out.reserve(z.size());
  for (auto root : z) {
    // Newton polish, then the inclusion radius.
    for (int k = 0; k < 3; ++k) {
      const PolyEval e = eval_with_derivative(c, root);
      if (e.dp == std::complex<double>{}) break;
      root -= e.p / e.dp;
    }
    const PolyEval e = eval_with_derivative(c, root);
    const double residual = std::abs(e.p) + 8.0 * d * kEps * e.abs_bound;
    double radius = std::abs(e.dp) > 0 ? d * residual / std::abs(e.dp) : std::numeric_limits<double>::infinity();
    radius = std::max(radius, 4.0 * kEps * (1.0 + std::abs(root)));
    out.push_back({root, 1, radius});
  }
  return out;
}

}  // namespace

int ZeroDivisor::total_multiplicity() const {
  int total = 0;
  for (const auto& z : zeros) total += z.multiplicity;
  return total;
}

int ZeroDivisor::multiplicity_at(std::complex<double> a) const {
  for (const auto& z : zeros)
    if (std::abs(z.location - a) <= std::max(z.certified_radius, 1e-9 * (1.0 + std::abs(a)))) return z.multiplicity;
  return 0;
}

std::vector<Zero> aberth_roots(const std::vector<std::complex<double>>& coeffs) {
  const int d = static_cast<int>(coeffs.size()) - 1;
  if (d < 1) return {};
  if (d == 1) return {{-coeffs[0] / coeffs[1], 1, 4.0 * kEps * (1.0 + std::abs(coeffs[0] / coeffs[1]))}};
  for (int attempt = 0; attempt < 4; ++attempt) {
    auto zs = run_aberth(coeffs, 500 * (attempt + 1), 0.4 + 0.7 * attempt);
    if (discs_disjoint(zs)) return zs;
  }
  throw Error(ErrorCode::RootIsolationFailed, "root isolation failed for degree " + std::to_string(d));
}

ZeroDivisor polynomial_zeros(const Polynomial& p) {
  if (p.is_zero()) throw Error(ErrorCode::IdenticallyZero, "zeros of the zero polynomial");
  ZeroDivisor div;
  const auto parts = square_free_decomposition(p);
  for (std::size_t k = 0; k < parts.size(); ++k) {
    if (parts[k].is_constant()) continue;
    for (auto z : aberth_roots(parts[k].to_complex())) {
      z.multiplicity = static_cast<int>(k) + 1;
      div.zeros.push_back(z);
    }
  }
  sort_zeros(div.zeros);
  return div;
}

bool zero_set_supported(const EntireExpr& e) {
  if (e.is_zero()) return false;
  if (e.is_single_direction()) return true;
  if (e.terms().size() != 2) return false;
  const auto& t = e.terms();
  return t[0].poly.is_constant() && t[1].poly.is_constant() && (t[1].exponent - t[0].exponent).degree() == 1;
}

ZeroDivisor zero_divisor(const EntireExpr& e, double radius) {
  if (e.is_zero()) throw Error(ErrorCode::IdenticallyZero, "zero set of the zero function");
  if (!zero_set_supported(e))
    throw Error(ErrorCode::UnsupportedZeroSet, "zero set of a mixed exponential sum: " + e.str());

  ZeroDivisor all;
  if (e.is_single_direction()) {
    all = polynomial_zeros(e.terms()[0].poly);
  } else {
    // c1 e^{Q1} + c2 e^{Q2} = 0  <=>  alpha z + beta = log(-c1/c2) + 2 pi i k.
    const auto& t = e.terms();
    const std::complex<double> c1 = t[0].poly.coeff(0).to_complex();
    const std::complex<double> c2 = t[1].poly.coeff(0).to_complex();
    const Polynomial diff = t[1].exponent - t[0].exponent;
    const std::complex<double> beta = diff.coeff(0).to_complex();
    const std::complex<double> alpha = diff.coeff(1).to_complex();
    const std::complex<double> z0 = (std::log(-c1 / c2) - beta) / alpha;
    const std::complex<double> step = std::complex<double>(0.0, 2.0 * std::numbers::pi) / alpha;
    const double s2 = std::norm(step);
    const double kc = -(z0 * std::conj(step)).real() / s2;
    const double half = radius / std::sqrt(s2) + 2.0;
    for (long k = static_cast<long>(std::floor(kc - half)); k <= static_cast<long>(std::ceil(kc + half)); ++k) {
      const std::complex<double> z = z0 + static_cast<double>(k) * step;
      all.zeros.push_back({z, 1, 64.0 * kEps * (1.0 + std::abs(z)) * (1.0 + std::abs(k))});
    }
  }

  ZeroDivisor inside;
  for (const auto& z : all.zeros) {
    const double m = std::abs(z.location);
    if (std::abs(m - radius) <= std::max(kBoundaryTol, z.certified_radius))
      throw Error(ErrorCode::ZeroOnBoundary, "zero at modulus " + std::to_string(m) + " on |z| = " + std::to_string(radius));
    if (m < radius) inside.zeros.push_back(z);
  }
  sort_zeros(inside.zeros);
  return inside;
}

}  // namespace nevlab
