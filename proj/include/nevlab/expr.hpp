#pragma once

#include <complex>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "nevlab/polynomial.hpp"

namespace nevlab {

/// One summand P(z) * exp(Q(z)).
struct ExpTerm {
  Polynomial poly;
  Polynomial exponent;

  friend bool operator==(const ExpTerm&, const ExpTerm&) = default;
};

/// Value of an expression kept as mantissa * exp(log_scale) so that large
/// exponentials stay representable.
struct ScaledValue {
  std::complex<double> mantissa;
  double log_scale = 0.0;

  /// log|value|; -inf for an exact zero.
  double log_abs() const;
  std::complex<double> value() const;
};

/// Entire function of the form sum_i P_i(z) exp(Q_i(z)), kept in canonical
/// form: terms sorted by Q_i, pairwise-distinct Q_i, no zero P_i. Because
/// exp of a non-zero Gaussian-rational polynomial is transcendental over
/// Q(i)[z], the canonical form is zero exactly when the function is.
class EntireExpr {
 public:
  EntireExpr() = default;
  EntireExpr(GaussianRational constant);  // NOLINT(google-explicit-constructor)
  EntireExpr(Polynomial poly);            // NOLINT(google-explicit-constructor)

  static EntireExpr variable();
  static EntireExpr exp(const Polynomial& exponent);
  static EntireExpr term(Polynomial poly, Polynomial exponent);
  static EntireExpr from_terms(std::vector<ExpTerm> terms);

  const std::vector<ExpTerm>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// At most one exponential direction; zeros are then those of one polynomial.
  bool is_single_direction() const { return terms_.size() <= 1; }
  bool is_polynomial() const;
  bool is_constant() const;
  /// Canonical-form sanity: sorted, distinct exponents, no zero polynomials.
  bool is_canonical() const;

  EntireExpr derivative() const;

  /// Throws Overflow when Re Q(z) > 700 for some term.
  std::complex<double> evaluate(std::complex<double> z) const;
  ScaledValue evaluate_scaled(std::complex<double> z) const;

  EntireExpr& operator+=(const EntireExpr& o);
  EntireExpr& operator+=(EntireExpr&& o);
  EntireExpr& operator-=(const EntireExpr& o);
  EntireExpr& operator-=(EntireExpr&& o);
  EntireExpr& operator*=(const EntireExpr& o);

  friend EntireExpr operator+(EntireExpr a, const EntireExpr& b) { return a += b; }
  friend EntireExpr operator-(EntireExpr a, const EntireExpr& b) { return a -= b; }
  friend EntireExpr operator*(EntireExpr a, const EntireExpr& b) { return a *= b; }
  friend EntireExpr operator-(EntireExpr a);

  friend bool operator==(const EntireExpr&, const EntireExpr&) = default;

  std::string str() const;

 private:
  void add_term(Polynomial poly, Polynomial exponent);
  std::vector<ExpTerm> terms_;
};

EntireExpr pow(const EntireExpr& e, unsigned exponent);

/// Repeated derivative, order >= 0.
EntireExpr derivative(const EntireExpr& e, int order);

/// Double-precision copy of an expression for repeated evaluation.
class CompiledExpr {
 public:
  CompiledExpr() = default;
  explicit CompiledExpr(const EntireExpr& e);

  ScaledValue evaluate_scaled(std::complex<double> z) const;
  std::complex<double> evaluate(std::complex<double> z) const;
  /// Sum of |P_i(z) e^{Q_i(z)}| in log form; the natural scale for deciding
  /// whether a computed value is numerically zero.
  double log_abs_term_sum(std::complex<double> z) const;
  bool is_zero() const { return terms_.empty(); }

 private:
  struct Term {
    std::vector<std::complex<double>> poly;
    std::vector<std::complex<double>> exponent;
  };
  std::vector<Term> terms_;
};

/// Input grammar tree (JSON form); converted to canonical form by
/// to_canonical(). Exp arguments are polynomials by construction.
struct ExprNode {
  struct Const { GaussianRational value; };
  struct Var {};
  struct Sum { std::vector<ExprNode> items; };
  struct Prod { std::vector<ExprNode> items; };
  struct Pow { std::shared_ptr<ExprNode> base; unsigned exponent; };
  struct Exp { Polynomial poly; };

  std::variant<Const, Var, Sum, Prod, Pow, Exp> node;
};

EntireExpr to_canonical(const ExprNode& n);

}  // namespace nevlab
