#pragma once

#include <cmath>
#include <complex>
#include <initializer_list>
#include <string>

#include "nevlab/curves.hpp"
#include "nevlab/expr.hpp"

namespace nevlab::test {

inline const double kPi = std::acos(-1.0);

inline EntireExpr z() { return EntireExpr::variable(); }
inline EntireExpr c(long v) { return EntireExpr(GaussianRational(v)); }
/// e^{a z^k}
inline EntireExpr exp_mono(long a, int k) { return EntireExpr::exp(Polynomial::monomial(GaussianRational(a), k)); }

inline Hyperplane line(std::initializer_list<long> coeffs) {
  Hyperplane h;
  for (long x : coeffs) h.coefficients.emplace_back(x);
  return h;
}

inline HyperplaneFamily family(int n, int N, std::initializer_list<Hyperplane> hs) {
  HyperplaneFamily f;
  f.n = n;
  f.N = N;
  f.hyperplanes.assign(hs.begin(), hs.end());
  return f;
}

inline HolomorphicCurve curve(std::initializer_list<EntireExpr> comps) {
  HolomorphicCurve f;
  f.components.assign(comps.begin(), comps.end());
  return f;
}

inline std::string data_path(const std::string& name) { return std::string(NEVLAB_TEST_DATA) + "/" + name; }

}  // namespace nevlab::test
