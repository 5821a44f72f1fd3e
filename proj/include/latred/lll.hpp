#pragma once

#include "latred/reduce_detail.hpp"

namespace latred {

// Classical delta-LLL, run standalone, as preprocessing for the deep-insertion
// reducers, and as the benchmark baseline. Implemented as the adjacent-swap
// special case of the shared loop skeleton.
template <class ZT, class FT>
ReductionStats lll_reduce(BasisT<ZT>& b, const ReductionParams& params,
                          FloatConfig cfg = {}) {
  params.validate();
  detail::Timer timer;
  ReductionStats st;
  Gso<ZT, FT> g(b, cfg);
  st.descent_insertion_bound =
      detail::descent_insertion_bound(g, params.delta);
  detail::reduce_loop(g, b.rank(), detail::LovaszPolicy<FT>{FT(params.delta)},
                      st);
  st.descent_loop_iterations = st.loop_iterations;
  st.descent_insertions = st.insertions;
  if (st.descent_insertion_bound >= 0 &&
      static_cast<double>(st.descent_insertions) > st.descent_insertion_bound)
    throw IterationCapExceeded("LLL exceeded the potential-descent bound");
  st.elapsed = timer.elapsed();
  return st;
}

// Direct check of the delta-LLL conditions on a freshly recomputed GSO.
// Comparisons carry a +1e-9 slack so equality-boundary bases verify.
template <class ZT, class FT>
ReducednessReport is_lll_reduced(const BasisT<ZT>& basis, double delta,
                                 FloatConfig cfg = {}) {
  BasisT<ZT> copy = basis;
  Gso<ZT, FT> g = compute_gso<ZT, FT>(copy, cfg);
  const int n = copy.rank();
  const FT mu_limit = FT(0.5) + FT(Gso<ZT, FT>::kSizeRedTol) + FT(1e-9);
  for (int i = 1; i < n; ++i)
    for (int j = 0; j < i; ++j)
      if (std::fabs(g.mu(i, j)) > mu_limit)
        return {false, ReducednessReport::Kind::SizeReduction, j, i,
                static_cast<double>(g.mu(i, j))};
  for (int k = 0; k + 1 < n; ++k) {
    FT proj = g.bstar_sq(k + 1) + g.mu(k + 1, k) * g.mu(k + 1, k) * g.bstar_sq(k);
    FT ratio = proj / g.bstar_sq(k);
    if (ratio + FT(1e-9) < FT(delta))
      return {false, ReducednessReport::Kind::Lovasz, k, k + 1,
              static_cast<double>(ratio)};
  }
  return {};
}

}  // namespace latred
