#pragma once

#include <complex>
#include <compare>
#include <utility>
#include <vector>

#include "nevlab/rational.hpp"

namespace nevlab {

/// Univariate polynomial in z with Gaussian-rational coefficients, stored in
/// ascending order with no trailing zeros (the zero polynomial is empty).
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<GaussianRational> coeffs);
  Polynomial(GaussianRational constant);  // NOLINT(google-explicit-constructor)

  static Polynomial variable();
  /// (z - root)
  static Polynomial linear_factor(const GaussianRational& root);
  static Polynomial monomial(const GaussianRational& c, int degree);

  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<GaussianRational>& coeffs() const { return c_; }
  const GaussianRational& coeff(int k) const;
  const GaussianRational& leading() const { return c_.back(); }

  Polynomial derivative() const;
  Polynomial monic() const;
  GaussianRational evaluate(const GaussianRational& z) const;
  std::complex<double> evaluate(std::complex<double> z) const;
  std::vector<std::complex<double>> to_complex() const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Polynomial& o);
  Polynomial& operator*=(const GaussianRational& s);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Polynomial& b) { return a *= b; }
  friend Polynomial operator*(Polynomial a, const GaussianRational& s) { return a *= s; }
  friend Polynomial operator*(const GaussianRational& s, Polynomial a) { return a *= s; }
  friend Polynomial operator-(Polynomial a);

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }
  /// Total order: by degree, then coefficients from the top down.
  friend std::strong_ordering operator<=>(const Polynomial& a, const Polynomial& b);

 private:
  void trim();
  std::vector<GaussianRational> c_;
};

Polynomial pow(const Polynomial& p, unsigned exponent);

/// Euclidean division over the field Q(i). Throws on a zero divisor.
std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b);

/// Monic gcd (zero if both are zero).
Polynomial gcd(Polynomial a, Polynomial b);

/// Yun decomposition p = c * prod_k a_k^k with each a_k monic and square-free
/// and pairwise coprime. Entry k-1 holds a_k; trailing constant factors dropped.
std::vector<Polynomial> square_free_decomposition(const Polynomial& p);

/// Largest m with (z - a)^m dividing p. p must be non-zero.
int root_multiplicity(const Polynomial& p, const GaussianRational& a);

}  // namespace nevlab
