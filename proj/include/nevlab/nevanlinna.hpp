#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nevlab/curves.hpp"
#include "nevlab/error.hpp"
#include "nevlab/nochka.hpp"
#include "nevlab/surfaces.hpp"
#include "nevlab/wronskian.hpp"

namespace nevlab {

/// psi = numerator / denominator without common zeros.
struct MeromorphicFn {
  EntireExpr numerator;
  EntireExpr denominator{GaussianRational(1)};

  MeromorphicFn derivative() const;
  /// X^k(psi) / psi as a quotient of entire expressions.
  MeromorphicFn log_derivative_ratio(int k) const;
  ScaledValue evaluate_scaled(std::complex<double> z) const;
};

/// log ||f(z)||, evaluated in log-space.
double log_norm(const HolomorphicCurve& f, std::complex<double> z);

/// Weil function log(||H|| ||f(o)|| / |H(f(o))|). Errors: BasePointOnDivisor.
double weil_function(const Hyperplane& h, const HolomorphicCurve& f);

/// Circle mean of log ||f|| over the geodesic circle, minus log ||f(o)||.
double characteristic(const HolomorphicCurve& f, const ModelSurface& s, double r, int nodes = 4096);

/// Circle mean of log(||H|| ||f|| / |H o f|). Errors: ZeroNearCircle.
double proximity(const HolomorphicCurve& f, const Hyperplane& h, const ModelSurface& s, double r, int nodes = 4096);

/// sum over zeros a of g in the ball of min(mult, k) pi g_r(o, a).
/// Supported zero sets are enumerated; otherwise Jensen's formula on the
/// circle gives the untruncated value, and truncation subtracts the excess
/// of zeros located through the first supported derivative g^{(j)}, j <= k,
/// or through W(f) when `curve` is given and k >= n.
/// Errors: BasePointOnDivisor, ZeroOnBoundary/ZeroNearCircle, UnsupportedZeroSet.
double counting_zeros(const EntireExpr& g, const ModelSurface& s, double r, std::optional<int> truncation,
                      int nodes = 4096, const HolomorphicCurve* curve = nullptr);

double counting(const HolomorphicCurve& f, const Hyperplane& h, const ModelSurface& s, double r,
                std::optional<int> truncation, int nodes = 4096);

/// Runs fn(r); on a zero at or near the circle retries at r (1 + 1e-6)^k,
/// k <= 3. Returns the radius actually used.
template <class Fn>
double with_clean_radius(double r, Fn&& fn, std::vector<std::string>* notes = nullptr);

struct FmtRow {
  double r = 0.0;
  double T = 0.0, m = 0.0, N = 0.0, Ntrunc = 0.0;
  double residual = 0.0;  // m + N - T
};

struct FmtSeries {
  double weil = 0.0;  // expected residual
  std::vector<FmtRow> rows;
  std::vector<std::string> notes;
  double max_deviation() const;
};

/// m + N - T per radius; constant and equal to the Weil function at o.
/// Ntrunc uses truncation level n. Errors: BasePointOnDivisor.
FmtSeries fmt_residual(const HolomorphicCurve& f, const Hyperplane& h, const ModelSurface& s,
                       const std::vector<double>& radii, int nodes = 4096);

/// m(r, psi): circle mean of log+ |psi|.
double proximity_infinity(const MeromorphicFn& psi, const ModelSurface& s, double r, int nodes = 4096);
/// T(r, psi) = m(r, psi) + N(r, psi) (poles counted through the denominator).
double t_of_meromorphic(const MeromorphicFn& psi, const ModelSurface& s, double r, int nodes = 4096);

/// (1/2pi) int g_r |psi'|^2 / (|psi|^2 (1 + log^2 |psi|)) dA over the ball,
/// polar nodes in log-radius from 1e-6, 1e-6 discs around zeros and poles
/// excluded. Zeros and poles are supported only at the centre.
/// Errors: NonConvergentQuadrature (an off-centre zero or pole, or refinement
/// moves the value by more than 1e-3).
double t_psi_phi(const MeromorphicFn& psi, const ModelSurface& s, double r);

struct LdlRow {
  double r = 0.0;
  double m = 0.0;        // m(r, X^k psi / psi)
  double T = 0.0;        // T(r, psi)
  double leading = 0.0;  // (3k/2) log T
  double error_term = 0.0;  // log+ log T - kappa r^2 + log+ log r
  double excess = 0.0;   // m - leading - C0 * error_term
};

struct LdlReport {
  int order = 1;
  double c0 = 0.0;  // NNLS coefficient of the error term
  double c1 = 0.0;  // allowed constant
  std::vector<LdlRow> rows;
  double max_excess() const;
  double violation_fraction() const;  // rows with excess > c1
  double min_margin() const;          // min (leading - m)
};

LdlReport ldl_check(const MeromorphicFn& psi, const ModelSurface& s, const std::vector<double>& radii, int k,
                    int nodes = 4096, double c1 = 0.0);

struct SmtRow {
  double r = 0.0;
  double T = 0.0;
  std::vector<double> m, N, Ntrunc;
  double lhs = 0.0;     // (q - 2N + n - 1) T
  double counted = 0.0; // sum Ntrunc
  double margin = 0.0;  // lhs - counted
};

struct SmtReport {
  Rational coefficient{0};  // q - 2N + n - 1
  std::vector<SmtRow> rows;
  double fit_a = 0.0, fit_c = 0.0;  // margin ~ a log T + c, a, c >= 0
  double max_fit_excess = 0.0;      // max (margin - a log T - c)
  std::vector<double> defects;      // delta^[n]_j from the top quarter of radii
  double defect_sum = 0.0;
  int defect_budget = 0;            // 2N - n + 1
  std::vector<std::string> notes;
};

/// Errors: Degenerate (W == 0), PositionViolated, BasePointOnDivisor.
SmtReport smt_margin(const HolomorphicCurve& f, const HyperplaneFamily& family, const NochkaWeights& w,
                     const ModelSurface& s, const std::vector<double>& radii, int nodes = 4096);

struct QuotientRow {
  double r = 0.0;
  double T = 0.0;
  double worst = 0.0;  // max_{j,k} T(r, f_j/f_k) - log(||f(o)|| / |f_k(o)|)
};

/// max_{j,k} T(r, f_j/f_k) <= T_f(r) + log(||f(o)|| / |f_k(o)|) by Jensen;
/// rows report the left side minus the constant.
std::vector<QuotientRow> quotient_characteristics(const HolomorphicCurve& f, const ModelSurface& s,
                                                  const std::vector<double>& radii, int nodes = 4096);

struct PointwiseReport {
  std::vector<std::complex<double>> points;
  std::vector<double> log_ratio;  // log(RHS / LHS) without C
  double min_log_ratio() const;
};

/// Weighted product inequality at random points of the coordinate disc of the
/// geodesic ball of radius r, skipping points within 1e-6 of zeros of any H_j o f.
PointwiseReport pointwise_ratio(const HolomorphicCurve& f, const HyperplaneFamily& family, const NochkaWeights& w,
                                const ModelSurface& s, double r, int n_points, std::uint64_t seed);

// implementation

template <class Fn>
double with_clean_radius(double r, Fn&& fn, std::vector<std::string>* notes) {
  double radius = r;
  for (int attempt = 0;; ++attempt) {
    try {
      fn(radius);
      return radius;
    } catch (const Error& e) {
      const bool near = e.code() == ErrorCode::ZeroOnBoundary || e.code() == ErrorCode::ZeroNearCircle ||
                        e.code() == ErrorCode::NodeOnSingularity;
      if (!near || attempt == 3) throw;
      const double next = radius * (1.0 + 1e-6);
      if (notes)
        notes->push_back("radius " + std::to_string(radius) + " moved to " + std::to_string(next) + ": " + e.what());
      radius = next;
    }
  }
}

}  // namespace nevlab
