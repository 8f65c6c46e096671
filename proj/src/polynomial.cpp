#include "nevlab/polynomial.hpp"

#include <algorithm>

#include "nevlab/error.hpp"

namespace nevlab {

namespace {
const GaussianRational kZero{};
}

Polynomial::Polynomial(std::vector<GaussianRational> coeffs) : c_(std::move(coeffs)) { trim(); }

Polynomial::Polynomial(GaussianRational constant) {
  if (!constant.is_zero()) c_.push_back(std::move(constant));
}

Polynomial Polynomial::variable() { return Polynomial({GaussianRational(0), GaussianRational(1)}); }

Polynomial Polynomial::linear_factor(const GaussianRational& root) {
  return Polynomial({-root, GaussianRational(1)});
}

Polynomial Polynomial::monomial(const GaussianRational& c, int degree) {
  std::vector<GaussianRational> v(static_cast<std::size_t>(degree) + 1);
  v.back() = c;
  return Polynomial(std::move(v));
}

const GaussianRational& Polynomial::coeff(int k) const {
  if (k < 0 || k >= static_cast<int>(c_.size())) return kZero;
  return c_[static_cast<std::size_t>(k)];
}

void Polynomial::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Polynomial Polynomial::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<GaussianRational> d(c_.size() - 1);
  for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * GaussianRational(static_cast<long>(k));
  return Polynomial(std::move(d));
}

Polynomial Polynomial::monic() const {
  if (is_zero()) return {};
  GaussianRational inv = GaussianRational(1) / leading();
  return *this * inv;
}

GaussianRational Polynomial::evaluate(const GaussianRational& z) const {
  GaussianRational acc;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

std::complex<double> Polynomial::evaluate(std::complex<double> z) const {
  std::complex<double> acc{};
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + it->to_complex();
  return acc;
}

std::vector<std::complex<double>> Polynomial::to_complex() const {
  std::vector<std::complex<double>> v;
  v.reserve(c_.size());
  for (const auto& c : c_) v.push_back(c.to_complex());
  return v;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
  trim();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
  trim();
  return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& o) {
  if (is_zero() || o.is_zero()) {
    c_.clear();
    return *this;
  }
  std::vector<GaussianRational> r(c_.size() + o.c_.size() - 1);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j].add_product(c_[i], o.c_[j]);
  }
  c_ = std::move(r);
  trim();
  return *this;
}

Polynomial& Polynomial::operator*=(const GaussianRational& s) {
  if (s.is_zero()) {
    c_.clear();
    return *this;
  }
  for (auto& c : c_) c *= s;
  return *this;
}

Polynomial operator-(Polynomial a) {
  for (auto& c : a.c_) c = -c;
  return a;
}

std::strong_ordering operator<=>(const Polynomial& a, const Polynomial& b) {
  if (a.c_.size() != b.c_.size()) return a.c_.size() <=> b.c_.size();
  for (std::size_t k = a.c_.size(); k-- > 0;) {
    auto c = a.c_[k] <=> b.c_[k];
    if (c != 0) return c;
  }
  return std::strong_ordering::equal;
}

Polynomial pow(const Polynomial& p, unsigned exponent) {
  Polynomial result(GaussianRational(1));
  Polynomial base = p;
  while (exponent) {
    if (exponent & 1U) result *= base;
    exponent >>= 1U;
    if (exponent) base *= base;
  }
  return result;
}

std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw Error(ErrorCode::InvalidInput, "polynomial division by zero");
  std::vector<GaussianRational> rem = a.coeffs();
  const int db = b.degree();
  if (a.degree() < db) return {Polynomial(), a};
  std::vector<GaussianRational> quot(static_cast<std::size_t>(a.degree() - db) + 1);
  const GaussianRational inv_lead = GaussianRational(1) / b.leading();
  for (int k = a.degree(); k >= db; --k) {
    const auto& top = rem[static_cast<std::size_t>(k)];
    if (top.is_zero()) continue;
    GaussianRational f = top * inv_lead;
    for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(k - db + j)] -= f * b.coeff(j);
    quot[static_cast<std::size_t>(k - db)] = std::move(f);
  }
  return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
}

Polynomial gcd(Polynomial a, Polynomial b) {
  while (!b.is_zero()) {
    Polynomial r = divmod(a, b).second;
    a = std::move(b);
    b = r.monic();
  }
  return a.monic();
}

std::vector<Polynomial> square_free_decomposition(const Polynomial& p) {
  if (p.is_zero()) throw Error(ErrorCode::IdenticallyZero, "square-free decomposition of zero");
  std::vector<Polynomial> out;
  if (p.is_constant()) return out;
  Polynomial f = p.monic();
  Polynomial fp = f.derivative();
  Polynomial a = gcd(f, fp);
  Polynomial b = divmod(f, a).first;
  Polynomial c = divmod(fp, a).first;
  Polynomial d = c - b.derivative();
  while (!b.is_constant()) {
    Polynomial g = gcd(b, d);
    out.push_back(g);
    b = divmod(b, g).first;
    c = divmod(d, g).first;
    d = c - b.derivative();
  }
  while (!out.empty() && out.back().is_constant()) out.pop_back();
  return out;
}

int root_multiplicity(const Polynomial& p, const GaussianRational& a) {
  if (p.is_zero()) throw Error(ErrorCode::IdenticallyZero, "multiplicity of a root of zero");
  int m = 0;
  Polynomial cur = p;
  const Polynomial lin = Polynomial::linear_factor(a);
  while (!cur.is_constant()) {
    auto [q, r] = divmod(cur, lin);
    if (!r.is_zero()) break;
    cur = std::move(q);
    ++m;
  }
  return m;
}

}  // namespace nevlab
