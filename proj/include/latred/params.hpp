#pragma once

#include <chrono>
#include <limits>

#include "latred/numeric.hpp"

namespace latred {

// MinPotential scans for the insertion index minimizing the potential ratio;
// FirstBelowDelta takes the smallest index whose ratio is already below delta.
enum class InsertionStrategy { MinPotential, FirstBelowDelta };

struct ReductionParams {
  double delta = 0.99;
  int beta = 2;  // blocksize, DeepLLL/BKZ only
  bool preprocess = true;
  InsertionStrategy insertion_strategy = InsertionStrategy::MinPotential;
  long long iteration_cap = 10'000'000;  // DeepLLL safety valve
  int sweep_cap = 5000;                  // BKZ safety valve

  void validate(bool needs_beta = false) const {
    if (!(delta > 0.25 && delta <= 1.0))
      throw ContractViolation("delta must lie in (1/4, 1]");
    if (needs_beta && beta < 2)
      throw ContractViolation("blocksize must be >= 2");
    if (iteration_cap <= 0 || sweep_cap <= 0)
      throw ContractViolation("iteration/sweep caps must be positive");
  }
};

struct ReductionStats {
  long long loop_iterations = 0;     // outer while-loop passes
  long long insertions = 0;          // applied sigma_{k,l} with k < l
  long long size_reduction_ops = 0;  // row-combination operations
  std::chrono::duration<double> elapsed{0};
  int precision_warnings = 0;
  int sweeps = 0;  // BKZ only

  // Potential-descent bookkeeping for the loops whose insertions provably
  // shrink the potential by a factor delta (LLL and the PotLLL main loop).
  // descent_insertion_bound < 0 means "not applicable" (DeepLLL, BKZ).
  long long descent_loop_iterations = 0;
  long long descent_insertions = 0;
  double descent_insertion_bound = -1.0;
  double max_insertion_log_ratio = -std::numeric_limits<double>::infinity();

  double elapsed_s() const { return elapsed.count(); }
};

}  // namespace latred
