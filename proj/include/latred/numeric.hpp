#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <type_traits>

namespace latred {

using Int = mpz_class;
using Rat = mpq_class;

// ---------------------------------------------------------------------------
// Error taxonomy
// ---------------------------------------------------------------------------

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ContractViolation : public Error {
 public:
  using Error::Error;
};

class DependentRows : public Error {
 public:
  explicit DependentRows(int row)
      : Error("rows are linearly dependent (detected at row " +
              std::to_string(row + 1) + ")"),
        row(row) {}
  int row;
};

class IterationCapExceeded : public Error {
 public:
  using Error::Error;
};

class SweepCapExceeded : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(int line, int col, const std::string& what)
      : Error("parse error at " + std::to_string(line) + ":" +
              std::to_string(col) + ": " + what),
        line(line),
        col(col) {}
  int line;
  int col;
};

class OverlongToken : public ParseError {
 public:
  OverlongToken(int line, int col)
      : ParseError(line, col, "token exceeds maximum length") {}
};

// ---------------------------------------------------------------------------
// Floating-point configuration
// ---------------------------------------------------------------------------

enum class FloatKind { HardwareDouble, ExtendedOrEmulated };

struct FloatConfig {
  FloatKind kind = FloatKind::HardwareDouble;
  double relative_tolerance = 1e-9;

  void validate() const {
    if (!(relative_tolerance > 0 && relative_tolerance <= 1e-3))
      throw ContractViolation("relative_tolerance must lie in (0, 1e-3]");
  }
};

// ---------------------------------------------------------------------------
// Conversions between exact integers and floating point.
//
// mpz_get_d saturates past 2^1024 even when the target type is long double,
// so conversions go through an explicit top-64-bit mantissa + ldexp to keep
// the full exponent range of the target type.
// ---------------------------------------------------------------------------

// Truncated-toward-zero conversion with a full 64-bit mantissa, reading the
// top limbs directly; no temporaries.
template <class FT>
inline FT to_float(const Int& z) {
  static_assert(GMP_LIMB_BITS == 64);
  const std::size_t n = mpz_size(z.get_mpz_t());
  FT v;
  if (n == 0) {
    return FT(0);
  } else if (n == 1) {
    v = static_cast<FT>(mpz_getlimbn(z.get_mpz_t(), 0));
  } else {
    const mp_limb_t hi = mpz_getlimbn(z.get_mpz_t(), n - 1);
    const mp_limb_t lo = mpz_getlimbn(z.get_mpz_t(), n - 2);
    const int lz = __builtin_clzll(hi);
    const mp_limb_t top =
        lz == 0 ? hi : (hi << lz) | (lo >> (64 - lz));
    v = std::ldexp(static_cast<FT>(top),
                   static_cast<int>((n - 1) * 64) - lz);
  }
  return sgn(z) < 0 ? -v : v;
}

// Generic entry conversion: lattice code is templated over the entry type
// (exact integers for integer lattices, floats for the one real-valued basis).
template <class FT, class ZT>
inline FT entry_to_float(const ZT& v) {
  if constexpr (std::is_floating_point_v<ZT>)
    return static_cast<FT>(v);
  else
    return to_float<FT>(v);
}

// Natural log of |z| without overflowing intermediate conversions.
inline double log_abs(const Int& z) {
  if (sgn(z) == 0) return -std::numeric_limits<double>::infinity();
  long e = 0;
  double d = mpz_get_d_2exp(&e, z.get_mpz_t());
  return std::log(std::fabs(d)) + static_cast<double>(e) * M_LN2;
}

inline double log_value(const Rat& q) {
  return log_abs(q.get_num()) - log_abs(q.get_den());
}

// Exact conversion of an integral-valued float (e.g. a rounded mu) to Int.
// Magnitudes above 2^64 are common while size-reducing raw bases, so this
// cannot round-trip through a machine integer.
template <class FT>
inline Int float_to_int_exact(FT x) {
  if (x == FT(0)) return Int(0);
  int e = 0;
  FT m = std::frexp(x, &e);  // |m| in [0.5, 1)
  auto u = static_cast<unsigned long long>(std::fabs(std::ldexp(m, 64)));
  Int r;
  mpz_import(r.get_mpz_t(), 1, 1, sizeof(u), 0, 0, &u);
  if (e >= 64)
    r <<= (e - 64);
  else
    r >>= (64 - e);
  return x < FT(0) ? Int(-r) : r;
}

// Rounding used for size reduction: round half away from zero, so output
// bases are reproducible across platforms.
template <class FT>
inline FT round_half_away(FT x) {
  return std::round(x);
}

template <class ZT, class FT>
inline ZT coeff_from_float(FT c) {
  if constexpr (std::is_floating_point_v<ZT>)
    return static_cast<ZT>(c);
  else
    return float_to_int_exact(c);
}

}  // namespace latred
