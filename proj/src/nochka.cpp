#include "nevlab/nochka.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>

#include "nevlab/error.hpp"
#include "nevlab/exact_lp.hpp"

namespace nevlab {

namespace {

Rational lower_gamma(const HyperplaneFamily& f) { return make_rational(f.n + 1, 2 * f.N - f.n + 1); }
Rational upper_gamma(const HyperplaneFamily& f) { return make_rational(f.n, f.N); }

Rational sum_over(IndexMask mask, const std::vector<Rational>& g) {
  Rational s(0);
  for (int j : mask_to_indices(mask)) s += g[static_cast<std::size_t>(j)];
  return s;
}

WeightCheck verify_with(const HyperplaneFamily& family, const NochkaWeights& w, const SubsetRanks& ranks) {
  const int q = family.q();
  if (static_cast<int>(w.gamma_j.size()) != q) return {false, "expected " + std::to_string(q) + " weights"};
  Rational mx = w.gamma_j.front();
  for (int j = 0; j < q; ++j) {
    const Rational& g = w.gamma_j[static_cast<std::size_t>(j)];
    if (sgn(g) <= 0 || g > 1) return {false, "gamma_" + std::to_string(j + 1) + " = " + g.get_str() + " not in (0,1]"};
    mx = std::max(mx, g);
  }
  if (mx != w.gamma) return {false, "gamma " + w.gamma.get_str() + " differs from max gamma_j " + mx.get_str()};
  if (w.gamma < lower_gamma(family) || w.gamma > upper_gamma(family))
    return {false, "gamma " + w.gamma.get_str() + " outside [(n+1)/(2N-n+1), n/N]"};
  const Rational total = std::accumulate(w.gamma_j.begin(), w.gamma_j.end(), Rational(0));
  if (w.gamma * (q - 2 * family.N + family.n - 1) != total - family.n - 1)
    return {false, "gamma (q-2N+n-1) != sum gamma_j - n - 1"};
  WeightCheck out;
  for_each_subset(q, family.N + 1, [&](IndexMask m) {
    if (!out.ok) return;
    if (sum_over(m, w.gamma_j) > ranks(m)) {
      out.ok = false;
      std::string s = "subset {";
      for (int j : mask_to_indices(m)) s += " " + std::to_string(j + 1);
      out.failure = s + " } exceeds its rank";
    }
  });
  return out;
}

/// Incrementally built LP over [gamma_1..gamma_q, gamma, t].
class WeightProgram {
 public:
  WeightProgram(const HyperplaneFamily& family, const SubsetRanks& ranks) : family_(family), ranks_(ranks) {
    q_ = family.q();
    lp_.num_vars = q_ + 2;
    const int g = q_, t = q_ + 1;
    for (int j = 0; j < q_; ++j) {
      add({{j, 1}}, Sense::LessEqual, 1);
      add({{j, 1}, {g, -1}}, Sense::LessEqual, 0);
      add({{t, 1}, {j, -1}}, Sense::LessEqual, 0);
    }
    add({{g, 1}}, Sense::LessEqual, upper_gamma(family));
    add({{g, 1}}, Sense::GreaterEqual, lower_gamma(family));
    std::vector<std::pair<int, Rational>> identity;
    for (int j = 0; j < q_; ++j) identity.emplace_back(j, Rational(1));
    identity.emplace_back(g, Rational(-(q_ - 2 * family.N + family.n - 1)));
    add(identity, Sense::Equal, family.n + 1);
  }

  void add(const std::vector<std::pair<int, Rational>>& terms, Sense sense, const Rational& rhs) {
    LinearConstraint c;
    c.coefficients.assign(static_cast<std::size_t>(lp_.num_vars), Rational(0));
    for (const auto& [k, v] : terms) c.coefficients[static_cast<std::size_t>(k)] = v;
    c.sense = sense;
    c.rhs = rhs;
    lp_.rows.push_back(std::move(c));
  }

  void pin_max(int j) { add({{j, 1}, {q_, -1}}, Sense::Equal, 0); }

  /// Optimises `objective` with lazily generated subset constraints.
  LpResult solve(std::vector<Rational> objective) {
    lp_.objective = std::move(objective);
    for (;;) {
      LpResult r = solve_lp(lp_);
      if (r.status != LpStatus::Optimal) return r;
      std::vector<Rational> g(r.x.begin(), r.x.begin() + q_);
      std::vector<std::pair<Rational, IndexMask>> violated;
      for_each_subset(q_, family_.N + 1, [&](IndexMask m) {
        Rational excess = sum_over(m, g) - ranks_(m);
        if (sgn(excess) > 0) violated.emplace_back(std::move(excess), m);
      });
      if (violated.empty()) return r;
      std::stable_sort(violated.begin(), violated.end(),
                       [](const auto& a, const auto& b) { return a.first > b.first; });
      if (violated.size() > 32) violated.resize(32);
      for (const auto& [excess, m] : violated) {
        std::vector<std::pair<int, Rational>> terms;
        for (int j : mask_to_indices(m)) terms.emplace_back(j, Rational(1));
        add(terms, Sense::LessEqual, ranks_(m));
      }
    }
  }

  std::vector<Rational> unit(int k, long sign) const {
    std::vector<Rational> c(static_cast<std::size_t>(lp_.num_vars), Rational(0));
    c[static_cast<std::size_t>(k)] = sign;
    return c;
  }

  int q() const { return q_; }

 private:
  const HyperplaneFamily& family_;
  const SubsetRanks& ranks_;
  LinearProgram lp_;
  int q_ = 0;
};

std::optional<NochkaWeights> solve_program(const HyperplaneFamily& family, const SubsetRanks& ranks, int pinned) {
  WeightProgram prog(family, ranks);
  const int q = prog.q(), g = q, t = q + 1;
  if (pinned >= 0) prog.pin_max(pinned);

  LpResult a = prog.solve(prog.unit(t, 1));
  if (a.status != LpStatus::Optimal || sgn(a.x[static_cast<std::size_t>(t)]) <= 0) return std::nullopt;
  prog.add({{t, 1}}, Sense::GreaterEqual, a.x[static_cast<std::size_t>(t)] / 2);

  LpResult b = prog.solve(prog.unit(g, -1));
  if (b.status != LpStatus::Optimal) return std::nullopt;
  prog.add({{g, 1}}, Sense::Equal, b.x[static_cast<std::size_t>(g)]);

  LpResult c = prog.solve(prog.unit(t, 1));
  if (c.status != LpStatus::Optimal) return std::nullopt;

  NochkaWeights w;
  w.gamma_j.assign(c.x.begin(), c.x.begin() + q);
  w.gamma = *std::max_element(w.gamma_j.begin(), w.gamma_j.end());
  if (w.gamma != c.x[static_cast<std::size_t>(g)]) return std::nullopt;
  return w;
}

}  // namespace

WeightCheck verify_weights(const HyperplaneFamily& family, const NochkaWeights& w) {
  const SubsetRanks ranks(family, family.N + 1);
  return verify_with(family, w, ranks);
}

NochkaWeights compute_weights(const HyperplaneFamily& family) {
  if (!check_position(family))
    throw Error(ErrorCode::PositionViolated, "family is not in " + std::to_string(family.N) + "-subgeneral position");
  if (family.q() <= 2 * family.N - family.n + 1)
    throw Error(ErrorCode::InvalidInput, "weights need q > 2N - n + 1");

  const SubsetRanks ranks(family, family.N + 1);
  NochkaWeights uniform;
  uniform.gamma = lower_gamma(family);
  uniform.gamma_j.assign(static_cast<std::size_t>(family.q()), uniform.gamma);
  if (verify_with(family, uniform, ranks).ok) return uniform;

  for (int pinned = -1; pinned < family.q(); ++pinned) {
    auto w = solve_program(family, ranks, pinned);
    if (w && verify_with(family, *w, ranks).ok) return *w;
  }
  throw Error(ErrorCode::Infeasible, "no admissible weights found");
}

bool weighted_product_le(const std::vector<int>& subset, const std::vector<Rational>& gammas,
                         const std::vector<int>& selection, const std::vector<Rational>& betas) {
  // Raise both sides to the common denominator D of the exponents, which
  // turns the comparison into one between exact rationals.
  mpz_class den(1);
  for (int j : subset) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), gammas[static_cast<std::size_t>(j)].get_den_mpz_t());
  double bits = 0.0;
  for (int j : subset) bits += std::abs(std::log2(betas[static_cast<std::size_t>(j)].get_d()) + 1.0);
  for (int j : selection) bits += std::abs(std::log2(betas[static_cast<std::size_t>(j)].get_d()) + 1.0);
  if (den.fits_ulong_p() && bits * den.get_d() < 4e6) {
    const unsigned long d = den.get_ui();
    Rational lhs(1), rhs(1);
    for (int j : subset) {
      const Rational& g = gammas[static_cast<std::size_t>(j)];
      const mpz_class e = g.get_num() * (den / g.get_den());
      lhs *= pow(betas[static_cast<std::size_t>(j)], static_cast<unsigned>(e.get_ui()));
    }
    Rational prod(1);
    for (int j : selection) prod *= betas[static_cast<std::size_t>(j)];
    rhs = pow(prod, static_cast<unsigned>(d));
    return lhs <= rhs;
  }
  double l = 0.0, r = 0.0;
  for (int j : subset) l += gammas[static_cast<std::size_t>(j)].get_d() * std::log(betas[static_cast<std::size_t>(j)].get_d());
  for (int j : selection) r += std::log(betas[static_cast<std::size_t>(j)].get_d());
  return r - l >= -1e-12;
}

std::vector<int> select_subset(const HyperplaneFamily& family, const NochkaWeights& w, const std::vector<int>& subset,
                               const std::vector<Rational>& betas) {
  if (subset.empty() || static_cast<int>(subset.size()) > family.N + 1)
    throw Error(ErrorCode::InvalidInput, "subset size must be in 1..N+1");
  if (static_cast<int>(betas.size()) != family.q()) throw Error(ErrorCode::InvalidInput, "need one beta per hyperplane");
  for (int j : subset)
    if (betas[static_cast<std::size_t>(j)] < 1) throw Error(ErrorCode::InvalidInput, "betas must be >= 1");

  const int target = rank_of_subset(family, subset);
  std::vector<int> order = subset;
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    const auto& ba = betas[static_cast<std::size_t>(a)];
    const auto& bb = betas[static_cast<std::size_t>(b)];
    return ba != bb ? ba > bb : a < b;
  });
  std::vector<int> picked;
  for (int j : order) {
    std::vector<int> trial = picked;
    trial.push_back(j);
    if (rank_of_subset(family, trial) == static_cast<int>(trial.size())) picked = std::move(trial);
    if (static_cast<int>(picked.size()) == target) break;
  }
  if (static_cast<int>(picked.size()) == target && weighted_product_le(subset, w.gamma_j, picked, betas)) {
    std::sort(picked.begin(), picked.end());
    return picked;
  }

  std::vector<int> found;
  const int k = static_cast<int>(subset.size());
  for_each_subset_of_size(k, target, [&](IndexMask m) {
    if (!found.empty()) return;
    std::vector<int> sel;
    for (int i : mask_to_indices(m)) sel.push_back(subset[static_cast<std::size_t>(i)]);
    if (rank_of_subset(family, sel) == target && weighted_product_le(subset, w.gamma_j, sel, betas)) found = sel;
  });
  if (found.empty()) throw Error(ErrorCode::NoSelection, "no rank-preserving selection satisfies the product bound");
  std::sort(found.begin(), found.end());
  return found;
}

}  // namespace nevlab
