#pragma once

#include <string>
#include <vector>

#include "nevlab/curves.hpp"

namespace nevlab {

/// Weights gamma_1..gamma_q and constant gamma for a family in N-subgeneral
/// position with q > 2N - n + 1.
struct NochkaWeights {
  std::vector<Rational> gamma_j;
  Rational gamma{0};
};

struct WeightCheck {
  bool ok = true;
  std::string failure;  // first violated condition, empty when ok
};

/// Exhaustive exact check of the three weight conditions:
///   0 < gamma_j <= 1;  gamma = max gamma_j;
///   (n+1)/(2N-n+1) <= gamma <= n/N;  gamma (q-2N+n-1) = sum gamma_j - n - 1;
///   sum_{j in Q} gamma_j <= rank(Q) for all 0 < |Q| <= N+1.
WeightCheck verify_weights(const HyperplaneFamily& family, const NochkaWeights& w);

/// Uniform weights (n+1)/(2N-n+1) when admissible; otherwise an exact LP
/// (simplex with subset-constraint generation) that maximises the smallest
/// weight, then minimises gamma, then rebalances at that gamma.
/// Errors: PositionViolated, InvalidInput (q <= 2N-n+1), Infeasible.
NochkaWeights compute_weights(const HyperplaneFamily& family);

/// Indices j_1..j_{rank(Q)} in Q spanning rank(Q) with
/// prod_{j in Q} beta_j^{gamma_j} <= prod_i beta_{j_i}. Greedy max-weight
/// basis first (a matroid greedy), exhaustive search as fallback.
/// Errors: InvalidInput on bad preconditions, NoSelection.
std::vector<int> select_subset(const HyperplaneFamily& family, const NochkaWeights& w, const std::vector<int>& subset,
                               const std::vector<Rational>& betas);

/// Exact comparison prod_{j in Q} beta_j^{gamma_j} <= prod_{j in S} beta_j.
bool weighted_product_le(const std::vector<int>& subset, const std::vector<Rational>& gammas,
                         const std::vector<int>& selection, const std::vector<Rational>& betas);

}  // namespace nevlab
