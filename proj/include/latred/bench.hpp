#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "latred/basis.hpp"
#include "latred/gso.hpp"
#include "latred/params.hpp"
#include "latred/reduce_detail.hpp"

namespace latred {

enum class Algo { Lll, PotLll, PotLll2, DeepLll, Bkz };

struct AlgoSpec {
  Algo algo = Algo::Lll;
  int beta = 0;  // blocksize for DeepLll/Bkz

  std::string label() const;
  // "lll", "potlll", "potlll2", "deeplll:5", "bkz:10"
  static std::optional<AlgoSpec> parse(const std::string& text);
  friend bool operator==(const AlgoSpec&, const AlgoSpec&) = default;
};

struct BenchRecord {
  AlgoSpec algo;
  int dim = 0;
  std::uint64_t seed = 0;
  bool preprocess = true;
  double hermite_root = 0;
  double elapsed_s = 0;
  ReductionStats stats;
  bool verified = true;
  std::string error;
};

struct AggregateRow {
  std::string algo;
  int dim = 0;
  bool preprocess = true;
  int count = 0;
  double mean_hermite_root = 0;
  double ci_low = 0;   // two-sided 99.9% Student-t interval on the mean
  double ci_high = 0;
  double mean_log_time = 0;
  double mean_time = 0;
};

struct BenchPlan {
  std::vector<int> dims;
  int seeds = 1;  // seeds 0 .. seeds-1
  std::vector<AlgoSpec> algos;
  std::vector<bool> preprocess_flags = {true};
  double delta = 0.99;
  int bits = 0;     // 0: default 10*dim
  int threads = 0;  // 0: hardware concurrency
  std::optional<FloatKind> forced_float;
};

struct BenchResult {
  std::vector<BenchRecord> records;
  std::vector<AggregateRow> aggregates;
  int failures = 0;
};

// n-th root Hermite factor (||b_1|| / vol^{1/n})^{1/n}, with b_1 the
// shortest vector of the returned basis; log domain throughout.
template <class ZT, class FT>
double hermite_root_factor_of(const Gso<ZT, FT>& g) {
  const int n = g.rank();
  double log_b1 = 0.5 * g.log_row_norm_sq(0);
  for (int i = 1; i < n; ++i)
    log_b1 = std::min(log_b1, 0.5 * g.log_row_norm_sq(i));
  double log_vol = static_cast<double>(log_volume(g));
  return std::exp((log_b1 - log_vol / n) / n);
}

template <class ZT, class FT>
double hermite_root_factor(const BasisT<ZT>& basis, FloatConfig cfg = {}) {
  BasisT<ZT> copy = basis;
  Gso<ZT, FT> g = compute_gso<ZT, FT>(copy, cfg);
  return hermite_root_factor_of(g);
}

// n-th-root form of the provable LLL Hermite bound:
// ((delta - 1/4)^{-(n-1)/4})^{1/n}.
double worst_case_bound(int n, double delta);

// Largest entry size for which squared norms stay clear of double's exponent
// range; beyond it the extended kind is selected automatically.
FloatKind pick_float_kind(const Basis& b,
                          std::optional<FloatKind> forced = std::nullopt);

// Reduce `b` in place with the given algorithm and verify the output with the
// matching reducedness oracle (throws Error on oracle rejection).
ReductionStats run_reduction(Basis& b, const AlgoSpec& algo,
                             const ReductionParams& params, FloatKind kind);

ReducednessReport verify_reduction(const Basis& b, const AlgoSpec& algo,
                                   const ReductionParams& params,
                                   FloatKind kind);

BenchResult run_bench(const BenchPlan& plan, std::ostream* progress = nullptr);

std::vector<AggregateRow> aggregate(const std::vector<BenchRecord>& records);

// CSV columns: algo,dim,seed,preprocess,hermite_root,elapsed_s,
// loop_iterations,insertions. hermite_root round-trips exactly.
void write_csv(std::ostream& out, const std::vector<BenchRecord>& records);
std::vector<BenchRecord> read_csv(std::istream& in);
void write_json_lines(std::ostream& out,
                      const std::vector<BenchRecord>& records);
void print_aggregate_table(std::ostream& out,
                           const std::vector<AggregateRow>& rows);

}  // namespace latred
