#pragma once

#include <vector>

#include "latred/lll.hpp"
#include "latred/reduce_detail.hpp"

namespace latred {

// Result of scanning the insertion candidates of row l: potential ratios
// P_{j,l} = Pot(sigma_{j,l} B) / Pot(B) evaluated by the descending-j
// recurrence P_{j,l} = P_{j+1,l} * ||pi_j(b_l)||^2 / ||b*_j||^2.
struct PotScan {
  int k = 0;             // chosen insertion index (== l when none qualifies)
  double log_ratio = 0;  // log P at the chosen index
  bool insert = false;   // log_ratio < log delta, strictly
};

namespace detail {

// Normalized positive value m * 2^e with m in [0.5, 1); survives the huge
// dynamic range of potential ratios without taking logs in the hot loop.
template <class FT>
struct MantExp {
  FT m = FT(0.5);
  long e = 1;  // value 1.0

  void mul(FT ratio) {
    if (!(ratio > FT(0)) || !std::isfinite(ratio)) {
      // cancellation garbage in a projection; the true ratio is tiny
      e -= 60000;
      return;
    }
    int re;
    FT rm = std::frexp(ratio, &re);
    m *= rm;
    int ne;
    m = std::frexp(m, &ne);
    e += re + ne;
  }
  bool less(const MantExp& o) const { return e != o.e ? e < o.e : m < o.m; }
  double log() const {
    return std::log(static_cast<double>(m)) + static_cast<double>(e) * M_LN2;
  }
  static MantExp of(FT v) {
    MantExp x;
    int e0;
    x.m = std::frexp(v, &e0);
    x.e = e0;
    return x;
  }
};

}  // namespace detail

// Scan row l for the insertion index. MinPotential takes the argmin of
// P_{j,l} (strict improvement, so ties keep the larger j); FirstBelowDelta
// takes the smallest j with P_{j,l} < delta.
template <class ZT, class FT>
PotScan potential_ratio_scan(const Gso<ZT, FT>& g, int l, double delta,
                             InsertionStrategy strategy) {
  assert(g.proj_row() == l && g.valid_prefix() > l);
  using ME = detail::MantExp<FT>;
  const ME limit = ME::of(FT(delta));
  ME p;          // P_{j,l}, starts at P_{l,l} = 1
  ME best;       // running minimum
  int best_j = l;
  ME first_val;
  int first_j = -1;
#if !defined(NDEBUG)
  FT alt_num = g.bstar_sq(l);  // Eq.-style numerator accumulation cross-check
#endif
  for (int j = l - 1; j >= 0; --j) {
    FT num = g.proj_sq(j);
#if !defined(NDEBUG)
    alt_num += g.mu(l, j) * g.mu(l, j) * g.bstar_sq(j);
    assert(std::fabs(alt_num - num) <=
           FT(1e-9) * std::max(g.proj_sq(0), FT(1)));
#endif
    p.mul(num / g.bstar_sq(j));
    if (p.less(best)) {
      best = p;
      best_j = j;
    }
    if (p.less(limit)) {
      first_val = p;
      first_j = j;
    }
  }
  PotScan out;
  if (strategy == InsertionStrategy::MinPotential) {
    out.k = best_j;
    out.log_ratio = best.log();
    out.insert = best.less(limit);
  } else {
    if (first_j >= 0) {
      out.k = first_j;
      out.log_ratio = first_val.log();
      out.insert = true;
    } else {
      out.k = l;
      out.log_ratio = 0;
      out.insert = false;
    }
  }
  return out;
}

// Full profile log P_{j,l} for j = 0..l, computed via the mu^2 accumulation
// route; used by the oracle and for cross-checking against exact potentials.
template <class ZT, class FT>
std::vector<double> potential_ratio_profile(const Gso<ZT, FT>& g, int l) {
  std::vector<double> out(l + 1, 0.0);
  FT num = g.bstar_sq(l);
  double logp = 0;
  for (int j = l - 1; j >= 0; --j) {
    num += g.mu(l, j) * g.mu(l, j) * g.bstar_sq(j);
    logp += static_cast<double>(std::log(num) - std::log(g.bstar_sq(j)));
    out[j] = logp;
  }
  return out;
}

// sigma_{k,l} with the subsequent refresh of row k, exposed for callers that
// drive the loop themselves (tests, experiments).
template <class ZT, class FT>
void apply_deep_insertion(Gso<ZT, FT>& g, int k, int l) {
  g.deep_insert(k, l);
}

// PotLLL / PotLLL2: deep insertions accepted only when they shrink the
// potential below delta * Pot(B), which bounds the number of insertions.
template <class ZT, class FT>
ReductionStats pot_lll_reduce(BasisT<ZT>& b, const ReductionParams& params,
                              FloatConfig cfg = {}) {
  params.validate();
  detail::Timer timer;
  ReductionStats st;
  Gso<ZT, FT> g(b, cfg);
  if (params.preprocess)
    detail::reduce_loop(g, b.rank(),
                        detail::LovaszPolicy<FT>{FT(params.delta)}, st);

  const double bound = detail::descent_insertion_bound(g, params.delta);
  st.descent_insertion_bound = bound;
  const int n = b.rank();
  for (int l = 0; l < n;) {
    ++st.loop_iterations;
    ++st.descent_loop_iterations;
    g.ensure_row(l);
    g.size_reduce_row(l, st);
    if (g.basis().row_is_zero(l)) throw DependentRows(l);
    PotScan sc;
    if (l > 0)
      sc = potential_ratio_scan(g, l, params.delta, params.insertion_strategy);
    if (sc.insert && sc.k < l) {
      g.deep_insert(sc.k, l);
      ++st.insertions;
      ++st.descent_insertions;
      st.max_insertion_log_ratio =
          std::max(st.max_insertion_log_ratio, sc.log_ratio);
      if (bound >= 0 && static_cast<double>(st.descent_insertions) > bound)
        throw IterationCapExceeded(
            "PotLLL exceeded the potential-descent insertion bound");
      l = sc.k;
    } else {
      ++l;
    }
  }
  // structural consequence of the descent argument; should never fire
  if (st.descent_loop_iterations >
      static_cast<long long>(n) * (st.descent_insertions + 1))
    throw IterationCapExceeded("PotLLL iteration count exceeded n*(N+1)");
  st.elapsed = timer.elapsed();
  return st;
}

// Oracle: size-reducedness plus delta <= P_{k,l} (+1e-9 slack) for all pairs,
// on a freshly recomputed GSO.
template <class ZT, class FT>
ReducednessReport is_pot_reduced(const BasisT<ZT>& basis, double delta,
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
  const double log_delta_slack = std::log(delta - 1e-9);
  for (int l = 1; l < n; ++l) {
    auto profile = potential_ratio_profile(g, l);
    for (int k = 0; k < l; ++k)
      if (profile[k] < log_delta_slack)
        return {false, ReducednessReport::Kind::Potential, k, l,
                std::exp(profile[k])};
  }
  return {};
}

}  // namespace latred
