#pragma once

#include <vector>

#include "latred/basis.hpp"
#include "latred/exact.hpp"
#include "latred/latgen.hpp"

namespace latred::testutil {

inline Basis from_rows(std::vector<std::vector<long>> rows) {
  std::vector<std::vector<Int>> out;
  out.reserve(rows.size());
  for (auto& r : rows) {
    std::vector<Int> row;
    row.reserve(r.size());
    for (long v : r) row.emplace_back(v);
    out.push_back(std::move(row));
  }
  return Basis(std::move(out));
}

// Random full-rank basis with small entries; deterministic per seed.
inline Basis random_basis(int n, int m, std::uint64_t seed, long span = 9) {
  SplitMix64 rng(seed);
  while (true) {
    std::vector<std::vector<Int>> rows(n, std::vector<Int>(m));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < m; ++j) {
        long v = static_cast<long>(rng.next() % (2 * span + 1)) - span;
        rows[i][j] = Int(v);
      }
    Basis b(std::move(rows));
    if (exact::rows_independent(b)) return b;
  }
}

// Unimodular transform: a bounded number of elementary integer row ops.
inline Basis random_unimodular_image(const Basis& b, std::uint64_t seed,
                                     int ops = 20) {
  SplitMix64 rng(seed);
  Basis u = b;
  const int n = u.rank();
  for (int s = 0; s < ops; ++s) {
    int kind = static_cast<int>(rng.next() % 3);
    int i = static_cast<int>(rng.next() % n);
    int j = static_cast<int>(rng.next() % n);
    if (kind == 0 && i != j) {
      long c = static_cast<long>(rng.next() % 7) - 3;
      if (c == 0) c = 1;
      for (int t = 0; t < u.dim(); ++t) u(i, t) += Int(c) * u(j, t);
    } else if (kind == 1) {
      u.swap_rows(i, j);
    } else {
      for (int t = 0; t < u.dim(); ++t) u(i, t) = -u(i, t);
    }
  }
  return u;
}

}  // namespace latred::testutil
