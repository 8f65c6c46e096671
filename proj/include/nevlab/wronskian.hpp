#pragma once

#include <complex>
#include <vector>

#include "nevlab/curves.hpp"
#include "nevlab/nochka.hpp"

namespace nevlab {

/// X = a(z) d/dz. Both model surfaces use a == 1.
struct VectorField {
  EntireExpr a{GaussianRational(1)};

  EntireExpr apply(const EntireExpr& e) const;
  EntireExpr apply(const EntireExpr& e, int order) const;
};

/// numerator / denominator, both entire.
struct MeromorphicPair {
  EntireExpr numerator;
  EntireExpr denominator{GaussianRational(1)};

  std::complex<double> evaluate(std::complex<double> z) const;
  ScaledValue evaluate_scaled(std::complex<double> z) const;
};

/// det [X^j(f_i)]_{j,i}, expanded symbolically.
EntireExpr wronskian(const std::vector<EntireExpr>& fs, const VectorField& x = {});

/// Delta = W / prod f_j. Throws IdenticallyZeroComponent.
MeromorphicPair log_wronskian(const std::vector<EntireExpr>& fs, const VectorField& x = {});

/// Vanishing order at a Gaussian-rational point: exact for a single
/// exponential direction (division by z - a), numeric otherwise.
int ord_at(const EntireExpr& e, const GaussianRational& a);
/// Vanishing order at a floating point: multiplicity of the certified zero
/// containing `a` when the zero set is supported, numeric derivative test
/// otherwise.
int ord_at(const EntireExpr& e, std::complex<double> a);
int ord_at(const MeromorphicPair& m, std::complex<double> a);
int ord_at(const MeromorphicPair& m, const GaussianRational& a);

/// First k with |e^{(k)}(a)| above 1e-9 times the term-magnitude scale.
int numeric_order(const EntireExpr& e, std::complex<double> a);

/// W(f) not identically zero.
bool is_linearly_nondegenerate(const HolomorphicCurve& f, const VectorField& x = {});

/// Rank of [f_i(z_k)]; exact for polynomial components, otherwise numeric
/// (full-pivot LU on column-normalised values).
int collocation_rank(const std::vector<EntireExpr>& fs, const std::vector<GaussianRational>& points);

struct DivisorPoint {
  std::complex<double> location;
  Rational weighted_excess{0};  // sum_j gamma_j (ord_a(H_j o f) - n)^+
  int wronskian_order = 0;
  bool holds() const { return weighted_excess <= wronskian_order; }
};

struct DivisorReport {
  std::vector<DivisorPoint> points;
  bool holds() const;
};

/// Truncated divisor inequality sum_j gamma_j (ord_a(H_j o f) - n)^+ <= ord_a W
/// at every zero of W in |z| < radius and at every supported zero of some
/// H_j o f with multiplicity above n.
DivisorReport divisor_inequality(const HolomorphicCurve& f, const HyperplaneFamily& family, const NochkaWeights& w,
                                 double radius, const VectorField& x = {});

}  // namespace nevlab
