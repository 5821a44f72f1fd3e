#pragma once

#include <chrono>
#include <string>

#include "latred/gso.hpp"

namespace latred {

// Diagnostic result of the reducedness oracles.
struct ReducednessReport {
  enum class Kind { None, SizeReduction, Lovasz, Deep, Potential };
  bool reduced = true;
  Kind kind = Kind::None;
  int k = -1;  // 0-based indices of the first violated pair
  int l = -1;
  double value = 0.0;

  std::string describe() const {
    if (reduced) return "reduced";
    const char* what = "";
    switch (kind) {
      case Kind::SizeReduction: what = "size reduction"; break;
      case Kind::Lovasz: what = "Lovasz condition"; break;
      case Kind::Deep: what = "deep exchange condition"; break;
      case Kind::Potential: what = "potential condition"; break;
      default: break;
    }
    return std::string("violated ") + what + " at (k, l) = (" +
           std::to_string(k + 1) + ", " + std::to_string(l + 1) +
           "), value " + std::to_string(value);
  }
};

namespace detail {

class Timer {
 public:
  Timer() : start_(std::chrono::steady_clock::now()) {}
  std::chrono::duration<double> elapsed() const {
    return std::chrono::steady_clock::now() - start_;
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

// Shared loop skeleton: visit row l, size-reduce it, let the policy pick an
// insertion position k < l (or l to advance). LLL is the adjacent-swap
// special case, DeepLLL and PotLLL plug in their own policies.
template <class ZT, class FT, class Policy>
void reduce_loop(Gso<ZT, FT>& g, int end, const Policy& pick,
                 ReductionStats& st) {
  for (int l = 0; l < end;) {
    ++st.loop_iterations;
    g.ensure_row(l);
    g.size_reduce_row(l, st);
    // a dependent row collapses to the exact zero vector under size
    // reduction; computed ||b*_l||^2 <= 0 alone only signals cancellation
    if (g.basis().row_is_zero(l)) throw DependentRows(l);
    int k = l > 0 ? pick(g, l) : l;
    if (k < l) {
      g.deep_insert(k, l);
      ++st.insertions;
      l = k;
    } else {
      ++l;
    }
  }
}

template <class FT>
struct LovaszPolicy {
  FT delta;
  template <class ZT>
  int operator()(const Gso<ZT, FT>& g, int l) const {
    return delta * g.bstar_sq(l - 1) > g.proj_sq(l - 1) ? l - 1 : l;
  }
};

// Insertion budget implied by potential descent: every accepted exchange
// multiplies Pot(B) by less than delta, and Pot <= C^{n(n-1)/2} * vol^2 with
// C the largest squared row norm at loop entry.
template <class ZT, class FT>
double descent_insertion_bound(const Gso<ZT, FT>& g, double delta) {
  if (delta >= 1.0) return -1.0;
  const int n = g.rank();
  double log_c = 0.0;
  for (int i = 0; i < n; ++i)
    log_c = std::max(log_c, g.log_row_norm_sq(i));
  return 0.5 * n * (n - 1) * log_c / std::log(1.0 / delta);
}

}  // namespace detail
}  // namespace latred
