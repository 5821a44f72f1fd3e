#pragma once

#include <optional>
#include <vector>

#include "latred/lll.hpp"
#include "latred/reduce_detail.hpp"

namespace latred {

struct EnumResult {
  std::vector<long long> coeffs;  // over block rows k..j
  double norm_sq = 0;
};

// Depth-first enumeration of the projected block pi_k(b_k..b_j): returns the
// nonzero integer combination of minimal squared norm if one lies strictly
// below `bound`, else nothing. Zig-zag ordering around the Babai center with
// partial-norm pruning only; the top level is restricted to x >= 0 since
// mirrored solutions have equal norms.
template <class ZT, class FT>
std::optional<EnumResult> svp_enumerate(const Gso<ZT, FT>& g, int k, int j,
                                        FT bound) {
  assert(g.valid_prefix() > j && k <= j);
  if (!(bound > FT(0))) return std::nullopt;
  const int d = j - k + 1;

  std::vector<FT> bs(d);
  for (int t = 0; t < d; ++t) bs[t] = g.bstar_sq(k + t);
  std::vector<std::vector<FT>> mu(d);
  for (int i = 0; i < d; ++i) {
    mu[i].resize(i);
    for (int t = 0; t < i; ++t) mu[i][t] = g.mu(k + i, k + t);
  }

  std::vector<FT> rho(d + 1, FT(0)), cen(d, FT(0));
  std::vector<long long> x(d, 0), base(d, 0), step(d, 0);
  std::vector<int> dir(d, 1);
  FT radius = bound;
  std::vector<long long> best;
  FT best_norm = FT(0);

  auto reset_level = [&](int t) {
    FT c(0);
    for (int u = t + 1; u < d; ++u) c += FT(x[u]) * mu[u][t];
    cen[t] = c;
    base[t] = std::llround(-c);
    step[t] = 0;
    dir[t] = (-c >= FT(base[t])) ? 1 : -1;
    x[t] = base[t];
  };
  auto advance_level = [&](int t) {
    ++step[t];
    long long s = step[t];
    long long off = (s % 2 == 1) ? (s + 1) / 2 * dir[t] : -(s / 2) * dir[t];
    x[t] = base[t] + off;
  };

  int t = d - 1;  // top level: centered at 0, nonnegative side only
  x[t] = 0;
  cen[t] = FT(0);

  while (true) {
    FT y = FT(x[t]) + cen[t];
    FT r2 = rho[t + 1] + y * y * bs[t];
    if (r2 < radius) {
      if (t > 0) {
        rho[t] = r2;
        --t;
        reset_level(t);
        continue;
      }
      bool nonzero = false;
      for (long long v : x)
        if (v != 0) {
          nonzero = true;
          break;
        }
      if (nonzero) {
        best = x;
        best_norm = r2;
        radius = r2;
      }
      advance_level(0);
    } else {
      // candidates at a level come in order of growing |y|, so this level
      // is exhausted
      ++t;
      if (t == d) break;
      if (t == d - 1)
        ++x[t];
      else
        advance_level(t);
    }
  }

  if (best.empty() || !(best_norm > FT(0))) return std::nullopt;
  return EnumResult{std::move(best), static_cast<double>(best_norm)};
}

namespace detail {

// LLL variant that tolerates the single dependency created by a BKZ insertion
// in rows [start, end): the dependent vector percolates upward through the
// usual Lovasz swaps, collapses to the integer zero row under size reduction,
// and is dropped. Returns the number of rows removed.
template <class ZT, class FT>
int mlll_segment(Gso<ZT, FT>& g, int start, int end, FT delta,
                 ReductionStats& st) {
  int removed = 0;
  long long guard = 0;
  for (int l = start; l < end;) {
    if (++guard > 4'000'000)
      throw Error("BKZ postprocessing did not converge");
    ++st.loop_iterations;
    g.ensure_row(l);
    g.size_reduce_row(l, st);
    if (g.basis().row_is_zero(l)) {
      g.remove_row(l);
      --end;
      ++removed;
      continue;
    }
    if (l == start) {
      ++l;
      continue;
    }
    if (delta * g.bstar_sq(l - 1) > g.proj_sq(l - 1)) {
      g.deep_insert(l - 1, l);
      ++st.insertions;
      --l;
    } else {
      ++l;
    }
  }
  return removed;
}

}  // namespace detail

// Blockwise Korkine-Zolotarev reduction with Schnorr-Euchner enumeration
// inside blocks. LLL-preprocessed; terminates after a full sweep without
// insertions, at which point every block start k satisfies
// ||b*_k||^2 <= (1/delta) * lambda_1(pi_k(block))^2.
template <class FT>
ReductionStats bkz_reduce(Basis& b, const ReductionParams& params,
                          FloatConfig cfg = {}) {
  params.validate(/*needs_beta=*/true);
  detail::Timer timer;
  ReductionStats st;
  Gso<Int, FT> g(b, cfg);
  const FT delta = FT(params.delta);
  detail::reduce_loop(g, b.rank(), detail::LovaszPolicy<FT>{delta}, st);

  const int n = b.rank();
  if (n >= 2) {
    while (true) {
      ++st.sweeps;
      if (st.sweeps > params.sweep_cap)
        throw SweepCapExceeded("BKZ exceeded its sweep cap of " +
                               std::to_string(params.sweep_cap));
      bool changed = false;
      for (int k = 0; k + 1 < n; ++k) {
        int jend = std::min(k + params.beta - 1, n - 1);
        ++st.loop_iterations;
        g.ensure_rows(jend);
        for (int t = std::max(k, 1); t <= jend; ++t) g.size_reduce_row(t, st);
        FT bound = delta * g.bstar_sq(k);
        auto found = svp_enumerate(g, k, jend, bound);
        if (!found) continue;
        g.insert_block_combination(k, found->coeffs);
        int removed = detail::mlll_segment(g, k, jend + 2, delta, st);
        if (removed != 1)
          throw Error("BKZ postprocessing removed " + std::to_string(removed) +
                      " rows, expected 1");
        int h = std::min(jend + 1, n - 1);
        detail::reduce_loop(g, h + 1, detail::LovaszPolicy<FT>{delta}, st);
        ++st.insertions;
        changed = true;
      }
      if (!changed) break;
    }
  }
  st.elapsed = timer.elapsed();
  return st;
}

}  // namespace latred
