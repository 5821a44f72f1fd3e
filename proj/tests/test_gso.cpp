#include <cmath>

#include "doctest.h"
#include "latred/exact.hpp"
#include "latred/gso.hpp"
#include "test_util.hpp"

using namespace latred;
using testutil::from_rows;
using testutil::random_basis;

TEST_CASE("gso of the identity") {
  Basis b = Basis::identity(3);
  auto g = compute_gso<Int, double>(b);
  for (int i = 0; i < 3; ++i) CHECK(g.bstar_sq(i) == 1.0);
  for (int i = 1; i < 3; ++i)
    for (int j = 0; j < i; ++j) CHECK(g.mu(i, j) == 0.0);
}

TEST_CASE("gso of a 2x2 hand example") {
  Basis b = from_rows({{1, 0}, {1, 2}});
  auto g = compute_gso<Int, double>(b);
  CHECK(g.mu(1, 0) == doctest::Approx(1.0));
  CHECK(g.bstar_sq(0) == doctest::Approx(1.0));
  CHECK(g.bstar_sq(1) == doctest::Approx(4.0));
}

TEST_CASE("product of bstar_sq equals the Gram determinant") {
  for (std::uint64_t seed = 3; seed < 9; ++seed) {
    Basis b = random_basis(8, 8, seed);
    auto g = compute_gso<Int, double>(b);
    double log_prod = 0;
    for (int i = 0; i < 8; ++i) log_prod += std::log(g.bstar_sq(i));
    double log_det = log_abs(exact::volume_sq(b));
    CHECK(std::fabs(log_prod - log_det) <= 1e-9 * std::max(1.0, log_det));
  }
}

TEST_CASE("dependent rows are rejected") {
  Basis b = from_rows({{1, 0}, {2, 0}});
  CHECK_THROWS_AS((compute_gso<Int, double>(b)), DependentRows);
  Basis c = from_rows({{1, 2, 3}, {2, 4, 6}});
  CHECK_THROWS_AS((compute_gso<Int, double>(c)), DependentRows);
}

TEST_CASE("update_row projection by-product on the 2x2 example") {
  Basis b = from_rows({{1, 0}, {1, 2}});
  Gso<Int, double> g(b);
  g.update_row(0);
  CHECK(g.bstar_sq(0) == 1.0);
  g.update_row(1);
  // ||pi_1(b_2)||^2 = ||b_2||^2 = 5, ||pi_2(b_2)||^2 = 4
  CHECK(g.proj_sq(0) == doctest::Approx(5.0));
  CHECK(g.proj_sq(1) == doctest::Approx(4.0));
}

TEST_CASE("row updates match a from-scratch recomputation bit for bit") {
  Basis b = random_basis(10, 10, 42);
  auto g = compute_gso<Int, double>(b);
  Basis copy = b;
  Gso<Int, double> h(copy);
  for (int i = 0; i < 10; ++i) h.update_row(i);
  for (int i = 0; i < 10; ++i) {
    CHECK(g.bstar_sq(i) == h.bstar_sq(i));
    for (int j = 0; j < i; ++j) CHECK(g.mu(i, j) == h.mu(i, j));
  }
}

TEST_CASE("projection norms are non-increasing in the projection index") {
  Basis b = random_basis(10, 12, 77);
  Basis copy = b;
  Gso<Int, double> g(copy);
  for (int i = 0; i < 10; ++i) {
    g.update_row(i);
    for (int j = 0; j < i; ++j)
      CHECK(g.proj_sq(j) >= g.proj_sq(j + 1) - 1e-9 * g.proj_sq(0));
  }
}

TEST_CASE("size reduction leaves an already-reduced row alone") {
  Basis b = from_rows({{10, 0}, {3, 10}});  // mu = 0.3
  Gso<Int, double> g(b);
  ReductionStats st;
  g.update_row(0);
  g.update_row(1);
  g.size_reduce_row(1, st);
  CHECK(st.size_reduction_ops == 0);
  CHECK(b == from_rows({{10, 0}, {3, 10}}));
}

TEST_CASE("size reduction subtracts the rounded multiple") {
  Basis b = from_rows({{1, 0}, {7, 2}});
  Gso<Int, double> g(b);
  ReductionStats st;
  g.update_row(0);
  g.update_row(1);
  g.size_reduce_row(1, st);
  CHECK(b == from_rows({{1, 0}, {0, 2}}));
  CHECK(g.mu(1, 0) == doctest::Approx(0.0));
  CHECK(st.size_reduction_ops == 1);
}

TEST_CASE("size reduction bounds mu and preserves bstar") {
  for (std::uint64_t seed = 11; seed < 17; ++seed) {
    Basis b = random_basis(8, 8, seed, 50);
    Basis copy = b;
    Gso<Int, double> g(copy);
    ReductionStats st;
    std::vector<double> bstar_before;
    for (int i = 0; i < 8; ++i) {
      g.update_row(i);
      bstar_before.push_back(g.bstar_sq(i));
      g.size_reduce_row(i, st);
    }
    // projections are invariant under adding multiples of earlier rows
    for (int i = 0; i < 8; ++i)
      CHECK(g.bstar_sq(i) ==
            doctest::Approx(bstar_before[i]).epsilon(1e-12));
    // the reduced rows satisfy the mu bound, checked against exact GSO
    auto eg = exact::gso(copy);
    for (int i = 1; i < 8; ++i)
      for (int j = 0; j < i; ++j) {
        CHECK(std::fabs(g.mu(i, j)) <= 0.5 + 1e-9);
        CHECK(std::fabs(eg.mu[i][j].get_d() - g.mu(i, j)) <= 1e-9);
      }
  }
}

TEST_CASE("size reduction preserves the lattice") {
  for (std::uint64_t seed = 21; seed < 25; ++seed) {
    Basis b = random_basis(6, 6, seed, 30);
    Basis copy = b;
    Gso<Int, double> g(copy);
    ReductionStats st;
    for (int i = 0; i < 6; ++i) {
      g.update_row(i);
      g.size_reduce_row(i, st);
    }
    CHECK(exact::hnf(copy) == exact::hnf(b));
  }
}

TEST_CASE("deep insert is the cyclic rotation sigma_{k,l}") {
  Basis b = from_rows({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  Gso<Int, double> g(b);
  g.ensure_rows(2);
  g.deep_insert(0, 2);  // (a,b,c) -> (c,a,b)
  CHECK(b == from_rows({{0, 0, 1}, {1, 0, 0}, {0, 1, 0}}));
  CHECK(g.valid_prefix() >= 1);
}

TEST_CASE("gso works on non-square bases") {
  Basis b = from_rows({{2, 1, 0}, {1, 1, 3}});
  auto g = compute_gso<Int, double>(b);
  auto eg = exact::gso(b);
  CHECK(g.bstar_sq(0) == doctest::Approx(5.0));
  CHECK(g.mu(1, 0) == doctest::Approx(eg.mu[1][0].get_d()).epsilon(1e-12));
}
