#include <cmath>

#include "doctest.h"
#include "latred/exact.hpp"
#include "latred/gso.hpp"
#include "test_util.hpp"

using namespace latred;
using testutil::from_rows;
using testutil::random_basis;

TEST_CASE("float config and params validation") {
  FloatConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.relative_tolerance = 1e-2;
  CHECK_THROWS_AS(cfg.validate(), ContractViolation);
  cfg.relative_tolerance = 0;
  CHECK_THROWS_AS(cfg.validate(), ContractViolation);

  ReductionParams p;
  CHECK_NOTHROW(p.validate());
  p.delta = 0.25;
  CHECK_THROWS_AS(p.validate(), ContractViolation);
  p.delta = 1.0;
  CHECK_NOTHROW(p.validate());
  p.beta = 1;
  CHECK_THROWS_AS(p.validate(true), ContractViolation);
}

TEST_CASE("basis shape invariants") {
  CHECK_THROWS_AS(Basis(3, 2), ContractViolation);
  CHECK_THROWS_AS(Basis(0, 0), ContractViolation);
  CHECK_NOTHROW(Basis(2, 5));
}

TEST_CASE("potential of identity is 1") {
  Basis b = Basis::identity(4);
  auto g = compute_gso<Int, double>(b);
  CHECK(std::fabs(log_potential(g)) < 1e-12);
  CHECK(exact::potential(b) == 1);
}

TEST_CASE("potential of diag(2,1) is 16") {
  Basis b = from_rows({{2, 0}, {0, 1}});
  auto g = compute_gso<Int, double>(b);
  CHECK(log_potential(g) == doctest::Approx(std::log(16.0)).epsilon(1e-12));
  CHECK(exact::potential(b) == 16);
}

TEST_CASE("log potential matches the exact oracle on random bases") {
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    int n = 3 + static_cast<int>(seed % 10);  // up to 12
    Basis b = random_basis(n, n + 2, seed);
    auto g = compute_gso<Int, double>(b);
    double exact_log = log_abs(exact::potential(b));
    CHECK(std::fabs(static_cast<double>(log_potential(g)) - exact_log) <=
          1e-9 * std::max(1.0, std::fabs(exact_log)));
  }
}

TEST_CASE("volume of identity and diagonal bases") {
  Basis i4 = Basis::identity(4);
  auto g = compute_gso<Int, double>(i4);
  CHECK(std::fabs(log_volume(g)) < 1e-12);

  Basis d = from_rows({{3, 0}, {0, 5}});
  auto gd = compute_gso<Int, double>(d);
  CHECK(std::exp(log_volume(gd)) == doctest::Approx(15.0).epsilon(1e-12));
  CHECK(exact::volume_sq(d) == 225);
}

TEST_CASE("volume matches exact determinant on random bases") {
  for (std::uint64_t seed = 100; seed < 106; ++seed) {
    Basis b = random_basis(6, 6, seed);
    auto g = compute_gso<Int, double>(b);
    double exact_log = 0.5 * log_abs(exact::volume_sq(b));
    CHECK(std::fabs(static_cast<double>(log_volume(g)) - exact_log) <=
          1e-9 * std::max(1.0, std::fabs(exact_log)));
  }
}

TEST_CASE("volume is permutation-invariant, potential is not") {
  Basis b = from_rows({{2, 0, 0}, {1, 3, 0}, {1, 1, 5}});
  Basis p = b;
  p.rotate_rows(0, 2);
  CHECK(exact::volume_sq(p) == exact::volume_sq(b));
  CHECK(exact::potential(p) != exact::potential(b));
}

TEST_CASE("volume is invariant under unimodular transforms") {
  for (std::uint64_t seed = 7; seed < 12; ++seed) {
    Basis b = random_basis(5, 5, seed);
    Basis u = testutil::random_unimodular_image(b, seed * 31 + 1);
    CHECK(exact::volume_sq(u) == exact::volume_sq(b));
  }
}

TEST_CASE("potential requires a fully valid GSO") {
  Basis b = Basis::identity(3);
  Gso<Int, double> g(b);
  g.update_row(0);
  CHECK_THROWS_AS(log_potential(g), ContractViolation);
}

TEST_CASE("exact potential is gated") {
  Basis b = Basis::identity(13);
  CHECK_THROWS_AS(exact::potential(b), ContractViolation);
}

TEST_CASE("stats counter invariant holds after a reduction") {
  ReductionStats st;
  CHECK(st.insertions <= st.loop_iterations + 0);
}
