#pragma once

#include <complex>
#include <compare>
#include <ostream>
#include <string>

#include <gmpxx.h>
#include <Eigen/Core>

namespace nevlab {

using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

namespace detail {

inline bool is_integer(const Rational& q) { return mpz_cmp_ui(q.get_den_mpz_t(), 1) == 0; }

/// acc += sign * a * b, with an integer fast path that avoids temporaries.
inline void add_mul(Rational& acc, const Rational& a, const Rational& b, bool negate = false) {
  if (sgn(a) == 0 || sgn(b) == 0) return;
  if (is_integer(a) && is_integer(b) && is_integer(acc)) {
    if (negate)
      mpz_submul(acc.get_num_mpz_t(), a.get_num_mpz_t(), b.get_num_mpz_t());
    else
      mpz_addmul(acc.get_num_mpz_t(), a.get_num_mpz_t(), b.get_num_mpz_t());
    return;
  }
  thread_local Rational t;
  mpq_mul(t.get_mpq_t(), a.get_mpq_t(), b.get_mpq_t());
  if (negate)
    mpq_sub(acc.get_mpq_t(), acc.get_mpq_t(), t.get_mpq_t());
  else
    mpq_add(acc.get_mpq_t(), acc.get_mpq_t(), t.get_mpq_t());
}

}  // namespace detail

/// Exact complex number with rational parts. No operation rounds.
struct GaussianRational {
  Rational re{0};
  Rational im{0};

  GaussianRational() = default;
  GaussianRational(long r) : re(r) {}  // NOLINT(google-explicit-constructor)
  GaussianRational(Rational r) : re(std::move(r)) {}  // NOLINT
  GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
  bool is_real() const { return sgn(im) == 0; }

  GaussianRational conj() const { return {re, -im}; }
  Rational norm_sq() const { return re * re + im * im; }

  GaussianRational& operator+=(const GaussianRational& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  GaussianRational& operator-=(const GaussianRational& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  GaussianRational& operator*=(const GaussianRational& o) {
    if (sgn(o.im) == 0) {
      re *= o.re;
      if (sgn(im) != 0) im *= o.re;
      return *this;
    }
    if (sgn(im) == 0) {
      im = re * o.im;
      re *= o.re;
      return *this;
    }
    Rational r = re * o.re - im * o.im;
    Rational i = re * o.im + im * o.re;
    re = std::move(r);
    im = std::move(i);
    return *this;
  }
  /// *this += a * b
  void add_product(const GaussianRational& a, const GaussianRational& b) {
    detail::add_mul(re, a.re, b.re);
    detail::add_mul(re, a.im, b.im, true);
    detail::add_mul(im, a.re, b.im);
    detail::add_mul(im, a.im, b.re);
  }

  GaussianRational& operator/=(const GaussianRational& o) {
    Rational d = o.norm_sq();
    Rational r = (re * o.re + im * o.im) / d;
    Rational i = (im * o.re - re * o.im) / d;
    re = std::move(r);
    im = std::move(i);
    return *this;
  }

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
  friend GaussianRational operator-(const GaussianRational& a) { return {-a.re, -a.im}; }

  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend std::strong_ordering operator<=>(const GaussianRational& a, const GaussianRational& b) {
    int c = cmp(a.re, b.re);
    if (c == 0) c = cmp(a.im, b.im);
    return c <=> 0;
  }

  std::complex<double> to_complex() const { return {re.get_d(), im.get_d()}; }

  std::string str() const {
    if (sgn(im) == 0) return re.get_str();
    return "(" + re.get_str() + (sgn(im) < 0 ? "-" : "+") + Rational(abs(im)).get_str() + "i)";
  }

  friend std::ostream& operator<<(std::ostream& os, const GaussianRational& g) { return os << g.str(); }
};

inline GaussianRational pow(GaussianRational base, unsigned exponent) {
  GaussianRational result(1);
  while (exponent) {
    if (exponent & 1U) result *= base;
    base *= base;
    exponent >>= 1U;
  }
  return result;
}

inline Rational pow(Rational base, unsigned exponent) {
  Rational result(1);
  while (exponent) {
    if (exponent & 1U) result *= base;
    base *= base;
    exponent >>= 1U;
  }
  return result;
}

/// "num/den" with den omitted when it is 1.
inline std::string fraction_string(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  if (c.get_den() == 1) return c.get_num().get_str() + "/1";
  return c.get_str();
}

}  // namespace nevlab

namespace Eigen {

// Lets Eigen dense containers hold exact scalars. Only storage and block
// access are used with these types; no Eigen decompositions run on them.
template <>
struct NumTraits<nevlab::Rational> : GenericNumTraits<nevlab::Rational> {
  using Real = nevlab::Rational;
  using NonInteger = nevlab::Rational;
  using Nested = nevlab::Rational;
  using Literal = nevlab::Rational;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 4,
    AddCost = 16,
    MulCost = 32
  };
};

template <>
struct NumTraits<nevlab::GaussianRational> : GenericNumTraits<nevlab::GaussianRational> {
  using Real = nevlab::GaussianRational;
  using NonInteger = nevlab::GaussianRational;
  using Nested = nevlab::GaussianRational;
  using Literal = nevlab::GaussianRational;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 32,
    MulCost = 128
  };
};

}  // namespace Eigen

namespace nevlab {

using RationalMatrix = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;
using GaussianMatrix = Eigen::Matrix<GaussianRational, Eigen::Dynamic, Eigen::Dynamic>;

}  // namespace nevlab
