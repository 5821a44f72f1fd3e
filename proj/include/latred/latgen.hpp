#pragma once

#include <cstdint>

#include "latred/basis.hpp"

namespace latred {

// SplitMix64: the documented stream generator behind all reproducible
// instance generation. Successive outputs for seed s are
//   z = (s += 0x9E3779B97F4A7C15)
//   z ^= z >> 30;  z *= 0xBF58476D1DF4E5B9
//   z ^= z >> 27;  z *= 0x94D049BB133111EB
//   return z ^ (z >> 31)
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : s_(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (s_ += 0x9E3779B97F4A7C15ull);
    z ^= z >> 30;
    z *= 0xBF58476D1DF4E5B9ull;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t s_;
};

// Uniform draw from [0, p): take t = bitlen(p) bits per attempt (the top t
// bits of ceil(t/64) big-endian SplitMix64 words) and retry while >= p.
Int uniform_below(SplitMix64& rng, const Int& p);

struct GenSpec {
  int dim = 0;
  std::uint64_t seed = 0;
  int bits = 0;  // 0 means the default 10 * dim

  int effective_bits() const { return bits > 0 ? bits : 10 * dim; }
  void validate() const {
    if (dim < 2) throw ContractViolation("generator requires dim >= 2");
    if (effective_bits() < dim)
      throw ContractViolation("bits must be >= dim");
  }
};

// Random HNF instance: row 1 = (p, 0, ..., 0) with p the smallest prime
// >= 2^bits, row i >= 2 = (x_i, 0, .., 1 at column i, .., 0) with x_i drawn
// uniformly from [0, p) in row order. det = p exactly; bit-identical for
// identical specs.
Basis generate_random_hnf(const GenSpec& spec);

struct CriticalBasisSpec {
  int dim = 0;
  // alpha^2 is fixed at 3/4; alpha itself is realized in the active float
  // precision, which makes this the one real-valued basis path.
};

// Lower-triangular A_n(alpha): diagonal (1, alpha, .., alpha^{n-1}) and
// entry (i,j) = alpha^{j-1} / 2 below it.
template <class FT>
BasisT<FT> critical_basis(const CriticalBasisSpec& spec) {
  const int n = spec.dim;
  if (n < 2) throw ContractViolation("critical basis requires dim >= 2");
  const FT alpha = std::sqrt(FT(3)) / FT(2);
  BasisT<FT> b(n, n);
  std::vector<FT> pow(n);
  pow[0] = FT(1);
  for (int i = 1; i < n; ++i) pow[i] = pow[i - 1] * alpha;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < i; ++j) b(i, j) = pow[j] / FT(2);
    b(i, i) = pow[i];
  }
  return b;
}

}  // namespace latred
