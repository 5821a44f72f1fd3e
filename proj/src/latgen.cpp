#include "latred/latgen.hpp"

namespace latred {

Int uniform_below(SplitMix64& rng, const Int& p) {
  const std::size_t t = mpz_sizeinbase(p.get_mpz_t(), 2);
  const std::size_t words = (t + 63) / 64;
  while (true) {
    Int v(0);
    for (std::size_t w = 0; w < words; ++w) {
      v <<= 64;
      std::uint64_t word = rng.next();
      Int wz;
      mpz_import(wz.get_mpz_t(), 1, 1, sizeof(word), 0, 0, &word);
      v += wz;
    }
    v >>= (64 * words - t);
    if (v < p) return v;
  }
}

Basis generate_random_hnf(const GenSpec& spec) {
  spec.validate();
  const int n = spec.dim;
  Int p = Int(1) << spec.effective_bits();
  p -= 1;
  mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());  // smallest prime >= 2^bits

  SplitMix64 rng(spec.seed);
  Basis b(n, n);
  b(0, 0) = p;
  for (int i = 1; i < n; ++i) {
    b(i, 0) = uniform_below(rng, p);
    b(i, i) = 1;
  }
  return b;
}

}  // namespace latred
