#pragma once

#include "latred/lll.hpp"
#include "latred/reduce_detail.hpp"

namespace latred {

namespace detail {

// Classical first-violation scan, k upward from the front, restricted to the
// blockwise-eligible pairs (k <= beta or l - k <= beta, 1-based).
template <class FT>
struct DeepPolicy {
  FT delta;
  int beta;
  template <class ZT>
  int operator()(const Gso<ZT, FT>& g, int l) const {
    for (int k = 0; k < l; ++k) {
      if (k + 1 > beta && l - k > beta) continue;
      if (delta * g.bstar_sq(k) > g.proj_sq(k)) return k;
    }
    return l;
  }
};

}  // namespace detail

// Blockwise DeepLLL. No polynomial runtime is guaranteed; a configurable hard
// cap on loop iterations aborts with a diagnostic instead.
template <class ZT, class FT>
ReductionStats deep_lll_reduce(BasisT<ZT>& b, const ReductionParams& params,
                               FloatConfig cfg = {}) {
  params.validate(/*needs_beta=*/true);
  detail::Timer timer;
  ReductionStats st;
  Gso<ZT, FT> g(b, cfg);
  if (params.preprocess)
    detail::reduce_loop(g, b.rank(),
                        detail::LovaszPolicy<FT>{FT(params.delta)}, st);

  const detail::DeepPolicy<FT> policy{FT(params.delta), params.beta};
  long long deep_iterations = 0;
  const int n = b.rank();
  for (int l = 0; l < n;) {
    ++st.loop_iterations;
    if (++deep_iterations > params.iteration_cap)
      throw IterationCapExceeded("DeepLLL exceeded its iteration cap of " +
                                 std::to_string(params.iteration_cap));
    g.ensure_row(l);
    g.size_reduce_row(l, st);
    if (g.basis().row_is_zero(l)) throw DependentRows(l);
    int k = l > 0 ? policy(g, l) : l;
    if (k < l) {
      g.deep_insert(k, l);
      ++st.insertions;
      l = k;
    } else {
      ++l;
    }
  }
  st.elapsed = timer.elapsed();
  return st;
}

// Oracle form of the blockwise deep-exchange conditions; recomputes the GSO
// from scratch and reports the first violated pair.
template <class ZT, class FT>
ReducednessReport is_deep_reduced(const BasisT<ZT>& basis, double delta,
                                  int beta, FloatConfig cfg = {}) {
  BasisT<ZT> copy = basis;
  Gso<ZT, FT> g = compute_gso<ZT, FT>(copy, cfg);
  const int n = copy.rank();
  const FT mu_limit = FT(0.5) + FT(Gso<ZT, FT>::kSizeRedTol) + FT(1e-9);
  for (int i = 1; i < n; ++i)
    for (int j = 0; j < i; ++j)
      if (std::fabs(g.mu(i, j)) > mu_limit)
        return {false, ReducednessReport::Kind::SizeReduction, j, i,
                static_cast<double>(g.mu(i, j))};
  for (int l = 1; l < n; ++l) {
    // ||pi_k(b_l)||^2 accumulated upward from the full norm
    FT proj = g.bstar_sq(l);
    for (int t = 0; t < l; ++t) proj += g.mu(l, t) * g.mu(l, t) * g.bstar_sq(t);
    for (int k = 0; k < l; ++k) {
      bool eligible = (k + 1 <= beta) || (l - k <= beta);
      if (eligible) {
        FT ratio = proj / g.bstar_sq(k);
        if (ratio + FT(1e-9) < FT(delta))
          return {false, ReducednessReport::Kind::Deep, k, l,
                  static_cast<double>(ratio)};
      }
      proj -= g.mu(l, k) * g.mu(l, k) * g.bstar_sq(k);
    }
  }
  return {};
}

}  // namespace latred
