#pragma once

#include <optional>
#include <vector>

#include "latred/basis.hpp"

namespace latred::exact {

// Exact-arithmetic companions to the floating GSO path. They share no code
// with it: determinants go through fraction-free elimination, Gram-Schmidt
// through rationals. Intended for oracle/verification use at small rank.

inline constexpr int kMaxExactPotentialRank = 12;

// det of the Gram matrix of the first `rows` rows (all rows when rows < 0).
Int gram_det(const Basis& b, int rows = -1);

// vol(L)^2 = det(B B^t).
Int volume_sq(const Basis& b);

bool rows_independent(const Basis& b);

// Pot(B) = prod_j det(Gram of first j rows); an exact positive integer.
// Gated to rank <= kMaxExactPotentialRank.
Int potential(const Basis& b);

// Pot(sigma_{k,l} B) / Pot(B), canonicalized. 0-based indices.
Rat potential_ratio_after_insertion(const Basis& b, int k, int l);

struct ExactGso {
  std::vector<std::vector<Rat>> mu;  // mu[i][j], j < i
  std::vector<Rat> bstar_sq;
};

ExactGso gso(const Basis& b);

// proj[i][j] = ||pi_j(b_i)||^2 for j <= i (0-based projections: pi_j drops
// components along rows < j).
std::vector<std::vector<Rat>> projected_norms(const Basis& b);

// Canonical row-style Hermite Normal Form: echelon with positive pivots and
// entries above each pivot reduced into [0, pivot). Certifies lattice
// equality.
Basis hnf(const Basis& b);

// Brute-force shortest nonzero vector of the projected block pi_k(b_k..b_j):
// scans the coefficient box |x_t| <= ceil(sqrt(bound / ||b*_t||^2)) + 1,
// skipping subtrees whose partial norm already exceeds the bound.
struct BlockShortest {
  std::vector<long long> coeffs;
  long double norm_sq;
};
std::optional<BlockShortest> block_shortest(const Basis& b, int k, int j,
                                            long double bound);

// Exact squared length of a shortest nonzero lattice vector, via the box scan
// with exact integer norms. Practical for small rank only.
Int shortest_vector_sq(const Basis& b);

// Exact-rational form of the PotLLL oracle (rank <= 10): checks
// delta * Pot(B) <= Pot(sigma_{k,l} B) for all pairs and |mu| <= 1/2 + 1e-6.
// Returns the first violated (k, l) or nothing when reduced.
std::optional<std::pair<int, int>> pot_reduced_violation(const Basis& b,
                                                         const Rat& delta);

}  // namespace latred::exact
