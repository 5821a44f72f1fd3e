#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "latred/numeric.hpp"

namespace latred {

// Row-major basis: rows_[i] is the i-th generator of the lattice.
// Entries are exact integers for ordinary lattices; the critical-basis path
// instantiates the same template with a floating entry type.
template <class ZT>
class BasisT {
 public:
  BasisT() = default;

  BasisT(int rank, int dim)
      : n_(rank), m_(dim), rows_(rank, std::vector<ZT>(dim, ZT(0))) {
    check_shape(rank, dim);
  }

  explicit BasisT(std::vector<std::vector<ZT>> rows) : rows_(std::move(rows)) {
    n_ = static_cast<int>(rows_.size());
    m_ = n_ > 0 ? static_cast<int>(rows_[0].size()) : 0;
    check_shape(n_, m_);
    for (const auto& r : rows_)
      if (static_cast<int>(r.size()) != m_)
        throw ContractViolation("ragged basis rows");
  }

  static BasisT identity(int n) {
    BasisT b(n, n);
    for (int i = 0; i < n; ++i) b.rows_[i][i] = ZT(1);
    return b;
  }

  int rank() const { return n_; }
  int dim() const { return m_; }

  std::vector<ZT>& row(int i) { return rows_[i]; }
  const std::vector<ZT>& row(int i) const { return rows_[i]; }

  ZT& operator()(int i, int j) { return rows_[i][j]; }
  const ZT& operator()(int i, int j) const { return rows_[i][j]; }

  // sigma_{k,l}: row l moves to position k, rows k..l-1 shift down one.
  void rotate_rows(int k, int l) {
    std::rotate(rows_.begin() + k, rows_.begin() + l, rows_.begin() + l + 1);
  }

  void swap_rows(int a, int b) { std::swap(rows_[a], rows_[b]); }

  // Generating-set operations used transiently by BKZ postprocessing; these
  // may leave rank > dim until the dependency is removed again.
  void insert_row(int k, std::vector<ZT> v) {
    rows_.insert(rows_.begin() + k, std::move(v));
    ++n_;
  }

  void remove_row(int k) {
    rows_.erase(rows_.begin() + k);
    --n_;
  }

  bool row_is_zero(int i) const {
    for (const ZT& v : rows_[i])
      if (v != ZT(0)) return false;
    return true;
  }

  friend bool operator==(const BasisT&, const BasisT&) = default;

 private:
  static void check_shape(int n, int m) {
    if (n < 1 || n > m)
      throw ContractViolation("basis must satisfy 1 <= rank <= dim");
  }

  int n_ = 0;
  int m_ = 0;
  std::vector<std::vector<ZT>> rows_;
};

using Basis = BasisT<Int>;

}  // namespace latred
