#include "latred/exact.hpp"

#include <algorithm>
#include <cmath>

namespace latred::exact {

namespace {

std::vector<std::vector<Int>> gram_matrix(const Basis& b, int rows) {
  const int n = rows < 0 ? b.rank() : rows;
  const int m = b.dim();
  std::vector<std::vector<Int>> g(n, std::vector<Int>(n, Int(0)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) {
      Int acc(0);
      for (int t = 0; t < m; ++t) acc += b(i, t) * b(j, t);
      g[i][j] = acc;
      if (j != i) g[j][i] = acc;
    }
  return g;
}

// Bareiss fraction-free determinant; all divisions are exact.
Int bareiss_det(std::vector<std::vector<Int>> a) {
  const int n = static_cast<int>(a.size());
  if (n == 0) return Int(1);
  Int prev(1);
  int sign = 1;
  for (int c = 0; c < n - 1; ++c) {
    int piv = -1;
    for (int r = c; r < n; ++r)
      if (a[r][c] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) return Int(0);
    if (piv != c) {
      std::swap(a[piv], a[c]);
      sign = -sign;
    }
    for (int r = c + 1; r < n; ++r)
      for (int t = c + 1; t < n; ++t) {
        Int num = a[r][t] * a[c][c] - a[r][c] * a[c][t];
        mpz_divexact(a[r][t].get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
      }
    prev = a[c][c];
  }
  Int det = a[n - 1][n - 1];
  return sign < 0 ? Int(-det) : det;
}

}  // namespace

Int gram_det(const Basis& b, int rows) {
  return bareiss_det(gram_matrix(b, rows));
}

Int volume_sq(const Basis& b) { return gram_det(b, b.rank()); }

bool rows_independent(const Basis& b) { return volume_sq(b) > 0; }

Int potential(const Basis& b) {
  const int n = b.rank();
  if (n > kMaxExactPotentialRank)
    throw ContractViolation("exact potential is gated to rank <= 12");
  Int pot(1);
  for (int j = 1; j <= n; ++j) {
    Int d = gram_det(b, j);
    if (d <= 0) throw DependentRows(j - 1);
    pot *= d;
  }
  return pot;
}

Rat potential_ratio_after_insertion(const Basis& b, int k, int l) {
  Basis sigma = b;
  sigma.rotate_rows(k, l);
  Rat ratio(potential(sigma), potential(b));
  ratio.canonicalize();
  return ratio;
}

ExactGso gso(const Basis& b) {
  const int n = b.rank();
  const int m = b.dim();
  ExactGso out;
  out.mu.assign(n, {});
  out.bstar_sq.assign(n, Rat(0));
  // bstar rows as rationals
  std::vector<std::vector<Rat>> bstar(n, std::vector<Rat>(m, Rat(0)));
  for (int i = 0; i < n; ++i) {
    out.mu[i].assign(i, Rat(0));
    std::vector<Rat> v(m);
    for (int t = 0; t < m; ++t) v[t] = Rat(b(i, t));
    for (int j = 0; j < i; ++j) {
      Rat num(0);
      for (int t = 0; t < m; ++t) num += Rat(b(i, t)) * bstar[j][t];
      Rat mu = num / out.bstar_sq[j];
      mu.canonicalize();
      out.mu[i][j] = mu;
      for (int t = 0; t < m; ++t) v[t] -= mu * bstar[j][t];
    }
    Rat norm(0);
    for (int t = 0; t < m; ++t) norm += v[t] * v[t];
    norm.canonicalize();
    if (norm <= 0) throw DependentRows(i);
    out.bstar_sq[i] = norm;
    bstar[i] = std::move(v);
  }
  return out;
}

std::vector<std::vector<Rat>> projected_norms(const Basis& b) {
  ExactGso g = gso(b);
  const int n = b.rank();
  std::vector<std::vector<Rat>> proj(n);
  for (int i = 0; i < n; ++i) {
    proj[i].assign(i + 1, Rat(0));
    Rat acc = g.bstar_sq[i];
    proj[i][i] = acc;
    for (int j = i - 1; j >= 0; --j) {
      acc += g.mu[i][j] * g.mu[i][j] * g.bstar_sq[j];
      acc.canonicalize();
      proj[i][j] = acc;
    }
  }
  return proj;
}

Basis hnf(const Basis& b) {
  const int n = b.rank();
  const int m = b.dim();
  std::vector<std::vector<Int>> a;
  a.reserve(n);
  for (int i = 0; i < n; ++i) a.push_back(b.row(i));

  int r = 0;
  for (int c = 0; c < m && r < n; ++c) {
    // clear column c below row r via gcd elimination
    while (true) {
      int piv = -1;
      for (int i = r; i < n; ++i)
        if (a[i][c] != 0 &&
            (piv < 0 || mpz_cmpabs(a[i][c].get_mpz_t(),
                                   a[piv][c].get_mpz_t()) < 0))
          piv = i;
      if (piv < 0) break;
      std::swap(a[piv], a[r]);
      bool more = false;
      for (int i = r + 1; i < n; ++i) {
        if (a[i][c] == 0) continue;
        Int q;
        mpz_tdiv_q(q.get_mpz_t(), a[i][c].get_mpz_t(), a[r][c].get_mpz_t());
        for (int t = 0; t < m; ++t) a[i][t] -= q * a[r][t];
        if (a[i][c] != 0) more = true;
      }
      if (!more) break;
    }
    if (a[r][c] == 0) continue;
    if (a[r][c] < 0)
      for (int t = 0; t < m; ++t) a[r][t] = -a[r][t];
    for (int i = 0; i < r; ++i) {
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), a[i][c].get_mpz_t(), a[r][c].get_mpz_t());
      if (q != 0)
        for (int t = 0; t < m; ++t) a[i][t] -= q * a[r][t];
    }
    ++r;
  }
  if (r != n) throw DependentRows(r);
  return Basis(std::move(a));
}

namespace {

struct BoxScan {
  int d = 0;
  std::vector<std::vector<long double>> mu;
  std::vector<long double> bs;
  std::vector<long long> range;
  std::vector<long long> x;
  long double bound = 0;
  std::vector<long long> best;
  long double best_norm = 0;

  // plain nested box walk, deepest coordinate first; prunes only subtrees
  // whose partial norm already exceeds the working bound
  void walk(int t, long double partial) {
    if (t < 0) {
      bool nonzero = false;
      for (long long v : x)
        if (v) {
          nonzero = true;
          break;
        }
      if (!nonzero) return;
      if (best.empty() || partial < best_norm) {
        best = x;
        best_norm = partial;
      }
      return;
    }
    long double c = 0;
    for (int u = t + 1; u < d; ++u) c += (long double)x[u] * mu[u][t];
    for (long long v = -range[t]; v <= range[t]; ++v) {
      long double y = (long double)v + c;
      long double r2 = partial + y * y * bs[t];
      if (r2 >= bound * (1 + 1e-12L)) continue;
      x[t] = v;
      walk(t - 1, r2);
    }
    x[t] = 0;
  }
};

}  // namespace

std::optional<BlockShortest> block_shortest(const Basis& b, int k, int j,
                                            long double bound) {
  ExactGso g = gso(b);
  BoxScan scan;
  scan.d = j - k + 1;
  scan.bound = bound;
  scan.bs.resize(scan.d);
  scan.mu.assign(scan.d, {});
  for (int i = 0; i < scan.d; ++i) {
    scan.bs[i] = (long double)g.bstar_sq[k + i].get_d();
    scan.mu[i].assign(i, 0.0L);
    for (int t = 0; t < i; ++t)
      scan.mu[i][t] = (long double)g.mu[k + i][k + t].get_d();
  }
  scan.range.resize(scan.d);
  for (int i = 0; i < scan.d; ++i)
    scan.range[i] =
        (long long)std::ceil(std::sqrt((double)(bound / scan.bs[i]))) + 1;
  scan.x.assign(scan.d, 0);
  scan.walk(scan.d - 1, 0.0L);
  if (scan.best.empty()) return std::nullopt;
  // tighten once with the improved bound: the box radii shrink accordingly
  if (scan.best_norm < bound / 2) {
    long double better = scan.best_norm * (1 + 1e-9L);
    auto again = block_shortest(b, k, j, better);
    if (again && again->norm_sq < scan.best_norm)
      return again;
  }
  return BlockShortest{scan.best, scan.best_norm};
}

Int shortest_vector_sq(const Basis& b) {
  const int n = b.rank();
  const int m = b.dim();
  Int best_exact(0);
  for (int i = 0; i < n; ++i) {
    Int norm(0);
    for (int t = 0; t < m; ++t) norm += b(i, t) * b(i, t);
    if (best_exact == 0 || norm < best_exact) best_exact = norm;
  }
  long double bound = to_float<long double>(best_exact) * (1 + 1e-9L);
  auto found = block_shortest(b, 0, n - 1, bound);
  if (!found) return best_exact;
  // exact integer norm of the found combination
  std::vector<Int> v(m, Int(0));
  for (int i = 0; i < n; ++i)
    if (found->coeffs[i] != 0)
      for (int t = 0; t < m; ++t)
        v[t] += Int((long)found->coeffs[i]) * b(i, t);
  Int norm(0);
  for (int t = 0; t < m; ++t) norm += v[t] * v[t];
  if (norm > 0 && norm < best_exact) best_exact = norm;
  return best_exact;
}

std::optional<std::pair<int, int>> pot_reduced_violation(const Basis& b,
                                                         const Rat& delta) {
  const int n = b.rank();
  if (n > 10)
    throw ContractViolation("exact PotLLL oracle is gated to rank <= 10");
  ExactGso g = gso(b);
  const Rat mu_limit = Rat(1, 2) + Rat(1, 1000000);
  for (int i = 1; i < n; ++i)
    for (int j = 0; j < i; ++j)
      if (abs(g.mu[i][j]) > mu_limit) return std::make_pair(j, i);
  Int pot = potential(b);
  for (int l = 1; l < n; ++l)
    for (int k = 0; k < l; ++k) {
      Basis sigma = b;
      sigma.rotate_rows(k, l);
      if (Rat(potential(sigma)) < delta * Rat(pot))
        return std::make_pair(k, l);
    }
  return std::nullopt;
}

}  // namespace latred::exact
