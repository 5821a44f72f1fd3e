#pragma once

#include <cassert>
#include <cmath>
#include <vector>

#include "latred/basis.hpp"
#include "latred/params.hpp"

namespace latred {

// Floating Gram-Schmidt state kept consistent with a basis prefix.
//
// The engine keeps a floating mirror of every basis row and derives the GSO
// quantities row by row from floating inner products:
//   r(i,j)  = <b_i, b*_j> = <b_i, b_j> - sum_{t<j} mu(j,t) r(i,t)
//   mu(i,j) = r(i,j) / ||b*_j||^2
//   s chain: s_0 = <b_l, b_l>, s_{j+1} = s_j - mu(l,j) r(l,j),
//            ||b*_l||^2 = s_l
// The s chain doubles as the projection by-product: proj_sq(j) = ||pi_j(b_l)||^2
// for the most recently refreshed row l. All basis mutations go through the
// engine; a row's mirror is refreshed from the exact row on update_row. With
// the extended float kind the mirrors cover the full entry range of 10n-bit
// instances at desk scale without per-row exponents.
template <class ZT, class FT>
class Gso {
 public:
  static constexpr double kSizeRedTol = 1e-6;
  static constexpr int kMaxSizeRedPasses = 8;

  explicit Gso(BasisT<ZT>& b, FloatConfig cfg = {}) : b_(&b), cfg_(cfg) {
    cfg_.validate();
    const int n = b.rank();
    fp_.assign(n, std::vector<FT>(b.dim(), FT(0)));
    for (int i = 0; i < n; ++i) refresh_mirror(i);
    const int w = n + 8;
    mu_.assign(w, std::vector<FT>(w, FT(0)));
    r_.assign(w, std::vector<FT>(w, FT(0)));
    bstar_.assign(w, FT(0));
    proj_.assign(w + 1, FT(0));
  }

  int rank() const { return b_->rank(); }
  int dim() const { return b_->dim(); }
  int valid_prefix() const { return valid_; }
  const BasisT<ZT>& basis() const { return *b_; }
  BasisT<ZT>& mutable_basis() { return *b_; }
  const FloatConfig& config() const { return cfg_; }
  bool precision_warning() const { return precision_warning_; }

  FT mu(int i, int j) const {
    assert(j < i && i < valid_);
    return mu_[i][j];
  }
  FT bstar_sq(int i) const {
    assert(i < valid_);
    return bstar_[i];
  }

  // ||pi_j(b_l)||^2 for the most recently refreshed row l, 0 <= j <= l.
  FT proj_sq(int j) const {
    assert(proj_row_ >= 0 && j <= proj_row_);
    return proj_[j];
  }
  int proj_row() const { return proj_row_; }

  // exact squared row norm (exact dot for integer bases)
  double log_row_norm_sq(int i) const {
    if constexpr (std::is_floating_point_v<ZT>) {
      FT acc(0);
      for (const ZT& v : b_->row(i)) acc += FT(v) * FT(v);
      return std::log(static_cast<double>(acc));
    } else {
      Int acc(0);
      for (const Int& v : b_->row(i)) acc += v * v;
      return log_abs(acc);
    }
  }

  void invalidate_from(int k) {
    if (valid_ > k) valid_ = k;
    if (proj_row_ >= k) proj_row_ = -1;
  }

  // Refresh row l from the basis; rows < l must be current.
  void update_row(int l) {
    assert(valid_ >= l);
    refresh_mirror(l);
    auto& mul = mu_[l];
    auto& rl = r_[l];
    const FT* fl = fp_[l].data();
    const int m = dim();
    for (int j = 0; j < l; ++j) {
      FT rij = dot(fl, fp_[j].data(), m);
      const auto& muj = mu_[j];
      for (int t = 0; t < j; ++t) rij -= muj[t] * rl[t];
      rl[j] = rij;
      mul[j] = bstar_[j] > FT(0) ? rij / bstar_[j] : FT(0);
    }
    FT s = dot(fl, fl, m);
    proj_[0] = s;
    for (int j = 0; j < l; ++j) {
      s -= mul[j] * rl[j];
      proj_[j + 1] = s;
    }
    bstar_[l] = s;
    proj_row_ = l;
    if (valid_ <= l) valid_ = l + 1;
  }

  // Make row l current assuming rows < l already are.
  void ensure_row(int l) {
    assert(valid_ >= l);
    if (valid_ == l) update_row(l);
  }

  void ensure_rows(int upto) {
    while (valid_ <= upto) update_row(valid_);
  }

  // compute_gso: full recomputation with dependence checks. The relative
  // underflow test is meaningful on size-reduced input; truly dependent rows
  // collapse the s chain to the rounding noise of ||b_l||^2.
  void full_update() {
    valid_ = 0;
    const int n = rank();
    for (int i = 0; i < n; ++i) {
      update_row(i);
      if (!(bstar_[i] > FT(0)) || bstar_[i] < dep_floor() * proj_[0])
        throw DependentRows(i);
    }
  }

  // Babai-style size reduction of row l against the prefix: subtract rounded
  // mu multiples largest-j first, refresh the row, and repeat until
  // |mu| <= 1/2 + tol. Raw inputs can carry mu values of thousands of bits
  // while each pass only shaves off a mantissa's worth, so passes continue
  // while they make progress; a warning is flagged once the nominal pass
  // budget is exceeded. Returns false only on stall.
  bool size_reduce_row(int l, ReductionStats& st) {
    assert(valid_ >= l + 1);
    const FT limit = FT(0.5) + FT(kSizeRedTol);
    FT prev_max = std::numeric_limits<FT>::infinity();
    for (int pass = 0;; ++pass) {
      FT vmax(0);
      for (int j = 0; j < l; ++j)
        vmax = std::max(vmax, std::fabs(mu_[l][j]));
      if (!(vmax > limit)) return true;
      if (pass == kMaxSizeRedPasses) {
        ++st.precision_warnings;
        precision_warning_ = true;
      }
      // stall: a productive pass shrinks the worst mu by many binary orders
      if (pass > kMaxSizeRedPasses && vmax > prev_max * FT(0.25)) return false;
      if (pass >= 1024) return false;
      prev_max = vmax;
      for (int j = l - 1; j >= 0; --j) {
        FT m = mu_[l][j];
        if (std::fabs(m) > limit) {
          row_sub(l, j, round_half_away(m));
          ++st.size_reduction_ops;
        }
      }
      update_row(l);
    }
  }

  // b_l -= c * b_j with a first-order refresh of the mu row (exact values
  // are restored by the next update_row).
  void row_sub(int l, int j, FT cf) {
    assert(l != j);
    subtract_scaled(b_->row(l), b_->row(j), cf);
    for (int t = 0; t < j; ++t) mu_[l][t] -= cf * mu_[j][t];
    mu_[l][j] -= cf;
  }

  // apply sigma_{k,l} (row l moves to position k) and refresh the new row k.
  void deep_insert(int k, int l) {
    assert(0 <= k && k <= l && l < rank());
    if (k == l) return;
    b_->rotate_rows(k, l);
    std::rotate(fp_.begin() + k, fp_.begin() + l, fp_.begin() + l + 1);
    invalidate_from(k);
    update_row(k);
  }

  // Insert sum_i coeffs[i] * b_{k+i} as a new row at position k. Used by BKZ;
  // leaves a one-dimensional dependency for the caller to remove.
  void insert_block_combination(int k, const std::vector<long long>& coeffs) {
    const int m = dim();
    const int d = static_cast<int>(coeffs.size());
    assert(k + d <= rank());
    std::vector<ZT> v(m, ZT(0));
    for (int i = 0; i < d; ++i) {
      if (coeffs[i] == 0) continue;
      ZT c = ZT(static_cast<long>(coeffs[i]));
      const auto& bi = b_->row(k + i);
      for (int t = 0; t < m; ++t) v[t] += c * bi[t];
    }
    b_->insert_row(k, std::move(v));
    fp_.insert(fp_.begin() + k, std::vector<FT>(m, FT(0)));
    grow_float_state();
    invalidate_from(k);
  }

  void remove_row(int k) {
    b_->remove_row(k);
    fp_.erase(fp_.begin() + k);
    invalidate_from(k);
  }

 private:
  FT dep_floor() const {
    // heuristic underflow floor: dependence cannot be certified at fixed
    // precision, but size-reduced independent rows stay far above this.
    return std::ldexp(FT(1), -(std::numeric_limits<FT>::digits - 8));
  }

  static FT dot(const FT* a, const FT* b, int m) {
    FT s0(0), s1(0);
    int t = 0;
    for (; t + 1 < m; t += 2) {
      s0 += a[t] * b[t];
      s1 += a[t + 1] * b[t + 1];
    }
    if (t < m) s0 += a[t] * b[t];
    return s0 + s1;
  }

  void refresh_mirror(int i) {
    const auto& row = b_->row(i);
    auto& f = fp_[i];
    f.resize(row.size());
    for (std::size_t t = 0; t < row.size(); ++t)
      f[t] = entry_to_float<FT>(row[t]);
  }

  void subtract_scaled(std::vector<ZT>& dst, const std::vector<ZT>& src,
                       FT cf) {
    const int m = static_cast<int>(dst.size());
    if constexpr (std::is_floating_point_v<ZT>) {
      ZT c = static_cast<ZT>(cf);
      for (int t = 0; t < m; ++t) dst[t] -= c * src[t];
    } else {
      const Int c = float_to_int_exact(cf);
      if (mpz_cmpabs_ui(c.get_mpz_t(), 1) == 0) {
        const bool neg = sgn(c) < 0;
        for (int t = 0; t < m; ++t) {
          if (sgn(src[t]) == 0) continue;
          if (neg)
            dst[t] += src[t];
          else
            dst[t] -= src[t];
        }
      } else {
        for (int t = 0; t < m; ++t) {
          if (sgn(src[t]) == 0) continue;
          mpz_submul(dst[t].get_mpz_t(), c.get_mpz_t(), src[t].get_mpz_t());
        }
      }
    }
  }

  void grow_float_state() {
    const std::size_t need = fp_.size();
    if (mu_.size() >= need) return;
    const std::size_t w = need + 8;
    mu_.assign(w, std::vector<FT>(w, FT(0)));
    r_.assign(w, std::vector<FT>(w, FT(0)));
    bstar_.assign(w, FT(0));
    proj_.assign(w + 1, FT(0));
    valid_ = 0;
    proj_row_ = -1;
  }

  BasisT<ZT>* b_;
  FloatConfig cfg_;
  int valid_ = 0;
  int proj_row_ = -1;
  bool precision_warning_ = false;
  std::vector<std::vector<FT>> fp_;  // floating mirror of the basis rows
  std::vector<std::vector<FT>> mu_;
  std::vector<std::vector<FT>> r_;
  std::vector<FT> bstar_;
  std::vector<FT> proj_;
};

template <class ZT, class FT>
Gso<ZT, FT> compute_gso(BasisT<ZT>& b, FloatConfig cfg = {}) {
  Gso<ZT, FT> g(b, cfg);
  g.full_update();
  return g;
}

// log Pot(B) = sum_i (n - i) * log ||b*_i||^2 (0-based weights n, n-1, .., 1).
template <class ZT, class FT>
FT log_potential(const Gso<ZT, FT>& g) {
  const int n = g.rank();
  if (g.valid_prefix() < n)
    throw ContractViolation("potential requires a fully valid GSO");
  FT acc(0);
  for (int i = 0; i < n; ++i)
    acc += FT(n - i) * std::log(g.bstar_sq(i));
  return acc;
}

// log vol(L) = 1/2 sum_i log ||b*_i||^2.
template <class ZT, class FT>
FT log_volume(const Gso<ZT, FT>& g) {
  const int n = g.rank();
  if (g.valid_prefix() < n)
    throw ContractViolation("volume requires a fully valid GSO");
  FT acc(0);
  for (int i = 0; i < n; ++i) acc += std::log(g.bstar_sq(i));
  return acc / FT(2);
}

}  // namespace latred
