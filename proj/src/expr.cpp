#include "nevlab/expr.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "nevlab/error.hpp"

namespace nevlab {

namespace {

constexpr double kExpOverflow = 700.0;

std::complex<double> horner(const std::vector<std::complex<double>>& c, std::complex<double> z) {
  std::complex<double> acc{};
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
  return acc;
}

std::string poly_str(const Polynomial& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int k = 0; k <= p.degree(); ++k) {
    const auto& c = p.coeff(k);
    if (c.is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    os << c.str();
    if (k == 1) os << "*z";
    if (k > 1) os << "*z^" << k;
  }
  return os.str();
}

}  // namespace

double ScaledValue::log_abs() const {
  const double a = std::abs(mantissa);
  if (a == 0.0) return -std::numeric_limits<double>::infinity();
  return std::log(a) + log_scale;
}

std::complex<double> ScaledValue::value() const { return mantissa * std::exp(log_scale); }

EntireExpr::EntireExpr(GaussianRational constant) {
  if (!constant.is_zero()) terms_.push_back({Polynomial(std::move(constant)), Polynomial()});
}

EntireExpr::EntireExpr(Polynomial poly) {
  if (!poly.is_zero()) terms_.push_back({std::move(poly), Polynomial()});
}

EntireExpr EntireExpr::variable() { return EntireExpr(Polynomial::variable()); }

EntireExpr EntireExpr::exp(const Polynomial& exponent) { return term(Polynomial(GaussianRational(1)), exponent); }

EntireExpr EntireExpr::term(Polynomial poly, Polynomial exponent) {
  EntireExpr e;
  e.add_term(std::move(poly), std::move(exponent));
  return e;
}

EntireExpr EntireExpr::from_terms(std::vector<ExpTerm> terms) {
  EntireExpr e;
  for (auto& t : terms) e.add_term(std::move(t.poly), std::move(t.exponent));
  return e;
}

bool EntireExpr::is_polynomial() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].exponent.is_zero());
}

bool EntireExpr::is_constant() const { return is_polynomial() && (terms_.empty() || terms_[0].poly.is_constant()); }

bool EntireExpr::is_canonical() const {
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (terms_[i].poly.is_zero()) return false;
    if (i > 0 && !(terms_[i - 1].exponent < terms_[i].exponent)) return false;
  }
  return true;
}

void EntireExpr::add_term(Polynomial poly, Polynomial exponent) {
  if (poly.is_zero()) return;
  auto it = std::lower_bound(terms_.begin(), terms_.end(), exponent,
                             [](const ExpTerm& t, const Polynomial& q) { return t.exponent < q; });
  if (it != terms_.end() && it->exponent == exponent) {
    it->poly += poly;
    if (it->poly.is_zero()) terms_.erase(it);
    return;
  }
  terms_.insert(it, ExpTerm{std::move(poly), std::move(exponent)});
}

EntireExpr EntireExpr::derivative() const {
  // d/dz (P e^Q) = (P' + P Q') e^Q keeps every exponent, so canonicity is preserved.
  EntireExpr d;
  for (const auto& t : terms_) {
    Polynomial p = t.poly.derivative() + t.poly * t.exponent.derivative();
    d.add_term(std::move(p), t.exponent);
  }
  return d;
}

EntireExpr& EntireExpr::operator+=(const EntireExpr& o) {
  for (const auto& t : o.terms_) add_term(t.poly, t.exponent);
  return *this;
}

EntireExpr& EntireExpr::operator+=(EntireExpr&& o) {
  if (terms_.empty()) return *this = std::move(o);
  for (auto& t : o.terms_) add_term(std::move(t.poly), std::move(t.exponent));
  return *this;
}

EntireExpr& EntireExpr::operator-=(EntireExpr&& o) {
  for (auto& t : o.terms_) add_term(-std::move(t.poly), std::move(t.exponent));
  return *this;
}

EntireExpr& EntireExpr::operator-=(const EntireExpr& o) {
  for (const auto& t : o.terms_) add_term(-t.poly, t.exponent);
  return *this;
}

EntireExpr& EntireExpr::operator*=(const EntireExpr& o) {
  EntireExpr r;
  for (const auto& a : terms_)
    for (const auto& b : o.terms_) r.add_term(a.poly * b.poly, a.exponent + b.exponent);
  *this = std::move(r);
  return *this;
}

EntireExpr operator-(EntireExpr a) {
  for (auto& t : a.terms_) t.poly = -t.poly;
  return a;
}

std::complex<double> EntireExpr::evaluate(std::complex<double> z) const {
  std::complex<double> acc{};
  for (const auto& t : terms_) {
    const std::complex<double> q = t.exponent.evaluate(z);
    if (q.real() > kExpOverflow)
      throw Error(ErrorCode::Overflow, "Re Q(z) = " + std::to_string(q.real()) + " exceeds 700; use evaluate_scaled");
    acc += t.poly.evaluate(z) * std::exp(q);
  }
  return acc;
}

ScaledValue EntireExpr::evaluate_scaled(std::complex<double> z) const { return CompiledExpr(*this).evaluate_scaled(z); }

std::string EntireExpr::str() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (i) s += " + ";
    s += "(" + poly_str(terms_[i].poly) + ")";
    if (!terms_[i].exponent.is_zero()) s += "*exp(" + poly_str(terms_[i].exponent) + ")";
  }
  return s;
}

EntireExpr pow(const EntireExpr& e, unsigned exponent) {
  EntireExpr result(GaussianRational(1));
  EntireExpr base = e;
  while (exponent) {
    if (exponent & 1U) result *= base;
    exponent >>= 1U;
    if (exponent) base *= base;
  }
  return result;
}

EntireExpr derivative(const EntireExpr& e, int order) {
  EntireExpr d = e;
  for (int k = 0; k < order; ++k) d = d.derivative();
  return d;
}

CompiledExpr::CompiledExpr(const EntireExpr& e) {
  terms_.reserve(e.terms().size());
  for (const auto& t : e.terms()) terms_.push_back({t.poly.to_complex(), t.exponent.to_complex()});
}

ScaledValue CompiledExpr::evaluate_scaled(std::complex<double> z) const {
  if (terms_.empty()) return {};
  if (terms_.size() == 1) {
    const auto q = horner(terms_[0].exponent, z);
    return {horner(terms_[0].poly, z) * std::polar(1.0, q.imag()), q.real()};
  }
  double scale = -std::numeric_limits<double>::infinity();
  // Small fixed-size buffer keeps this allocation-free for typical curves.
  std::complex<double> qs[16];
  std::vector<std::complex<double>> heap;
  std::complex<double>* q = qs;
  if (terms_.size() > 16) {
    heap.resize(terms_.size());
    q = heap.data();
  }
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    q[i] = horner(terms_[i].exponent, z);
    scale = std::max(scale, q[i].real());
  }
  std::complex<double> acc{};
  for (std::size_t i = 0; i < terms_.size(); ++i) acc += horner(terms_[i].poly, z) * std::exp(q[i] - scale);
  return {acc, scale};
}

std::complex<double> CompiledExpr::evaluate(std::complex<double> z) const {
  std::complex<double> acc{};
  for (const auto& t : terms_) {
    const auto q = horner(t.exponent, z);
    if (q.real() > kExpOverflow)
      throw Error(ErrorCode::Overflow, "Re Q(z) = " + std::to_string(q.real()) + " exceeds 700; use evaluate_scaled");
    acc += horner(t.poly, z) * std::exp(q);
  }
  return acc;
}

double CompiledExpr::log_abs_term_sum(std::complex<double> z) const {
  double scale = -std::numeric_limits<double>::infinity();
  std::vector<std::pair<double, double>> parts;
  parts.reserve(terms_.size());
  for (const auto& t : terms_) {
    const double re = horner(t.exponent, z).real();
    const double mag = std::abs(horner(t.poly, z));
    parts.emplace_back(mag, re);
    scale = std::max(scale, re);
  }
  double acc = 0.0;
  for (const auto& [mag, re] : parts) acc += mag * std::exp(re - scale);
  if (acc == 0.0) return -std::numeric_limits<double>::infinity();
  return std::log(acc) + scale;
}

EntireExpr to_canonical(const ExprNode& n) {
  return std::visit(
      [](const auto& v) -> EntireExpr {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, ExprNode::Const>) {
          return EntireExpr(v.value);
        } else if constexpr (std::is_same_v<T, ExprNode::Var>) {
          return EntireExpr::variable();
        } else if constexpr (std::is_same_v<T, ExprNode::Sum>) {
          EntireExpr acc;
          for (const auto& item : v.items) acc += to_canonical(item);
          return acc;
        } else if constexpr (std::is_same_v<T, ExprNode::Prod>) {
          EntireExpr acc(GaussianRational(1));
          for (const auto& item : v.items) acc *= to_canonical(item);
          return acc;
        } else if constexpr (std::is_same_v<T, ExprNode::Pow>) {
          return pow(to_canonical(*v.base), v.exponent);
        } else {
          return EntireExpr::exp(v.poly);
        }
      },
      n.node);
}

}  // namespace nevlab
