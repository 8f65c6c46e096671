#pragma once

#include <complex>
#include <vector>

#include "nevlab/expr.hpp"

namespace nevlab {

struct Zero {
  std::complex<double> location;
  int multiplicity = 1;
  /// A disc of this radius around `location` provably contains the zero.
  double certified_radius = 0.0;
};

/// Zeros with exact multiplicities, sorted by modulus then argument.
struct ZeroDivisor {
  std::vector<Zero> zeros;

  int total_multiplicity() const;
  /// Multiplicity of the zero whose certified disc contains `a`, else 0.
  int multiplicity_at(std::complex<double> a) const;
};

/// Simple roots of a square-free polynomial (numeric coefficients) by
/// Aberth-Ehrlich simultaneous iteration, each with an a-posteriori
/// inclusion radius deg * |p| / |p'|.
std::vector<Zero> aberth_roots(const std::vector<std::complex<double>>& coeffs);

/// Every zero over C of a non-zero polynomial; multiplicities from the exact
/// square-free decomposition.
ZeroDivisor polynomial_zeros(const Polynomial& p);

/// Zeros of `e` in |z| < radius (Euclidean coordinate radius).
/// Supported classes: a single exponential direction P e^Q (zeros of P), and
/// the two-term class c1 e^{Q1} + c2 e^{Q2} with constant c1, c2 and
/// deg(Q2 - Q1) = 1 (an explicit lattice of simple zeros).
/// Errors: IdenticallyZero, UnsupportedZeroSet, ZeroOnBoundary (within 1e-9).
ZeroDivisor zero_divisor(const EntireExpr& e, double radius);

/// True when zero_divisor can enumerate the zero set of `e`.
bool zero_set_supported(const EntireExpr& e);

}  // namespace nevlab
