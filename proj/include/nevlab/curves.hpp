#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include "nevlab/expr.hpp"
#include "nevlab/rational.hpp"

namespace nevlab {

/// Reduced representation [f_0 : ... : f_n] of a curve into P^n, together
/// with the reference point o of the geodesic discs.
struct HolomorphicCurve {
  std::vector<EntireExpr> components;
  std::complex<double> base_point{0.0, 0.0};

  int dimension() const { return static_cast<int>(components.size()) - 1; }
};

/// Checks the invariants that can be decided: some component non-zero, and
/// no common zero of the components. Common zeros are searched among the
/// zeros of the gcd of the polynomial parts of single-direction components
/// and confirmed numerically on the remaining ones; a curve with no
/// single-direction component is reported reduced.
bool is_reduced(const HolomorphicCurve& f);

struct Hyperplane {
  std::vector<GaussianRational> coefficients;

  int dimension() const { return static_cast<int>(coefficients.size()) - 1; }
  Rational norm_sq() const;
  double norm() const;
  /// H(w) = sum_k h_k w_k.
  std::complex<double> apply(const std::vector<std::complex<double>>& w) const;
};

/// Bit k set <=> hyperplane k (0-based) is in the subset.
using IndexMask = std::uint32_t;

std::vector<int> mask_to_indices(IndexMask mask);
IndexMask indices_to_mask(const std::vector<int>& indices);

/// Calls fn(mask) for every subset of {0..q-1} with 1 <= |Q| <= max_size,
/// in increasing size, lexicographic within a size.
void for_each_subset(int q, int max_size, const std::function<void(IndexMask)>& fn);
void for_each_subset_of_size(int q, int size, const std::function<void(IndexMask)>& fn);

/// q hyperplanes of P^n declared to be in N-subgeneral position.
struct HyperplaneFamily {
  std::vector<Hyperplane> hyperplanes;
  int n = 0;
  int N = 0;

  int q() const { return static_cast<int>(hyperplanes.size()); }
  /// q x (n+1) coefficient matrix.
  GaussianMatrix coefficient_matrix() const;
};

/// Exact rank over Q(i) by Gaussian elimination.
int exact_rank(GaussianMatrix m);

/// H o f = sum_k h_k f_k. Throws DimensionMismatch.
EntireExpr compose(const Hyperplane& h, const HolomorphicCurve& f);

int rank_of_subset(const HyperplaneFamily& family, IndexMask subset);
int rank_of_subset(const HyperplaneFamily& family, const std::vector<int>& subset);

/// Every (N+1)-subset has rank n+1. Requires q >= N+1 (and N >= n).
bool check_position(const HyperplaneFamily& family);

/// Memoised exact ranks of every subset of size <= max_size.
class SubsetRanks {
 public:
  SubsetRanks(const HyperplaneFamily& family, int max_size);
  int operator()(IndexMask subset) const;
  int max_size() const { return max_size_; }

 private:
  int max_size_;
  std::vector<std::pair<IndexMask, int>> table_;  // sorted by mask
};

}  // namespace nevlab
