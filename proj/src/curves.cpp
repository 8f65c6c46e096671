#include "nevlab/curves.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "nevlab/error.hpp"
#include "nevlab/roots.hpp"

namespace nevlab {

bool is_reduced(const HolomorphicCurve& f) {
  bool any_nonzero = false;
  std::vector<const EntireExpr*> mixed;
  Polynomial common;
  bool have_poly = false;
  for (const auto& c : f.components) {
    if (c.is_zero()) continue;
    any_nonzero = true;
    if (c.is_single_direction()) {
      const Polynomial& p = c.terms()[0].poly;
      common = have_poly ? gcd(common, p) : p.monic();
      have_poly = true;
    } else {
      mixed.push_back(&c);
    }
  }
  if (!any_nonzero) return false;
  if (!have_poly || common.is_constant()) return true;
  for (const auto& z : polynomial_zeros(common).zeros) {
    bool all_vanish = true;
    for (const auto* m : mixed) {
      const CompiledExpr ce(*m);
      const double v = ce.evaluate_scaled(z.location).log_abs();
      if (v > std::log(1e-9) + ce.log_abs_term_sum(z.location)) {
        all_vanish = false;
        break;
      }
    }
    if (all_vanish) return false;
  }
  return true;
}

Rational Hyperplane::norm_sq() const {
  Rational s(0);
  for (const auto& h : coefficients) s += h.norm_sq();
  return s;
}

double Hyperplane::norm() const { return std::sqrt(norm_sq().get_d()); }

std::complex<double> Hyperplane::apply(const std::vector<std::complex<double>>& w) const {
  std::complex<double> acc{};
  for (std::size_t k = 0; k < coefficients.size() && k < w.size(); ++k) acc += coefficients[k].to_complex() * w[k];
  return acc;
}

std::vector<int> mask_to_indices(IndexMask mask) {
  std::vector<int> out;
  while (mask) {
    out.push_back(std::countr_zero(mask));
    mask &= mask - 1;
  }
  return out;
}

IndexMask indices_to_mask(const std::vector<int>& indices) {
  IndexMask m = 0;
  for (int i : indices) m |= IndexMask{1} << i;
  return m;
}

void for_each_subset_of_size(int q, int size, const std::function<void(IndexMask)>& fn) {
  if (q > 30) throw Error(ErrorCode::InvalidInput, "subset enumeration supports at most 30 hyperplanes");
  if (size <= 0 || size > q) return;
  // Gosper's hack walks the size-k masks in increasing numeric order.
  IndexMask m = (IndexMask{1} << size) - 1;
  const IndexMask limit = IndexMask{1} << q;
  while (m < limit) {
    fn(m);
    const IndexMask c = m & (~m + 1);
    const IndexMask r = m + c;
    m = (((r ^ m) >> 2) / c) | r;
  }
}

void for_each_subset(int q, int max_size, const std::function<void(IndexMask)>& fn) {
  for (int k = 1; k <= std::min(q, max_size); ++k) for_each_subset_of_size(q, k, fn);
}

GaussianMatrix HyperplaneFamily::coefficient_matrix() const {
  GaussianMatrix m(q(), n + 1);
  for (int i = 0; i < q(); ++i)
    for (int k = 0; k <= n; ++k) m(i, k) = hyperplanes[static_cast<std::size_t>(i)].coefficients[static_cast<std::size_t>(k)];
  return m;
}

int exact_rank(GaussianMatrix m) {
  const Eigen::Index rows = m.rows(), cols = m.cols();
  int rank = 0;
  for (Eigen::Index col = 0; col < cols && rank < rows; ++col) {
    Eigen::Index pivot = -1;
    for (Eigen::Index r = rank; r < rows; ++r)
      if (!m(r, col).is_zero()) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    if (pivot != rank) m.row(pivot).swap(m.row(rank));
    const GaussianRational inv = GaussianRational(1) / m(rank, col);
    for (Eigen::Index r = rank + 1; r < rows; ++r) {
      if (m(r, col).is_zero()) continue;
      const GaussianRational f = m(r, col) * inv;
      for (Eigen::Index c = col; c < cols; ++c) m(r, c) -= f * m(rank, c);
    }
    ++rank;
  }
  return rank;
}

EntireExpr compose(const Hyperplane& h, const HolomorphicCurve& f) {
  if (h.coefficients.size() != f.components.size())
    throw Error(ErrorCode::DimensionMismatch, "hyperplane has " + std::to_string(h.coefficients.size()) +
                                                  " coefficients, curve has " + std::to_string(f.components.size()) +
                                                  " components");
  EntireExpr acc;
  for (std::size_t k = 0; k < f.components.size(); ++k) {
    if (h.coefficients[k].is_zero()) continue;
    acc += EntireExpr(h.coefficients[k]) * f.components[k];
  }
  return acc;
}

int rank_of_subset(const HyperplaneFamily& family, IndexMask subset) {
  const auto idx = mask_to_indices(subset);
  GaussianMatrix m(static_cast<Eigen::Index>(idx.size()), family.n + 1);
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (int k = 0; k <= family.n; ++k)
      m(static_cast<Eigen::Index>(i), k) =
          family.hyperplanes[static_cast<std::size_t>(idx[i])].coefficients[static_cast<std::size_t>(k)];
  return exact_rank(std::move(m));
}

int rank_of_subset(const HyperplaneFamily& family, const std::vector<int>& subset) {
  for (int i : subset)
    if (i < 0 || i >= family.q()) throw Error(ErrorCode::InvalidInput, "hyperplane index out of range");
  return rank_of_subset(family, indices_to_mask(subset));
}

bool check_position(const HyperplaneFamily& family) {
  if (family.q() < family.N + 1 || family.N < family.n) return false;
  for (const auto& h : family.hyperplanes)
    if (h.dimension() != family.n) throw Error(ErrorCode::DimensionMismatch, "hyperplane dimension differs from n");
  bool ok = true;
  for_each_subset_of_size(family.q(), family.N + 1, [&](IndexMask m) {
    if (ok && rank_of_subset(family, m) != family.n + 1) ok = false;
  });
  return ok;
}

SubsetRanks::SubsetRanks(const HyperplaneFamily& family, int max_size) : max_size_(max_size) {
  for_each_subset(family.q(), max_size, [&](IndexMask m) { table_.emplace_back(m, rank_of_subset(family, m)); });
  std::sort(table_.begin(), table_.end());
}

int SubsetRanks::operator()(IndexMask subset) const {
  auto it = std::lower_bound(table_.begin(), table_.end(), std::make_pair(subset, -1));
  if (it == table_.end() || it->first != subset) throw Error(ErrorCode::InvalidInput, "subset rank not tabulated");
  return it->second;
}

}  // namespace nevlab
