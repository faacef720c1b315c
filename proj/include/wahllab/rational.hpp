#pragma once

// Exact scalar layer.  Rat/Int alias GMP's canonical rational and integer
// types; nothing outside this header should spell a gmp type directly.

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

#include "wahllab/errors.hpp"

namespace wahllab {

using Int = mpz_class;
using Rat = mpq_class;

inline Rat make_rat(long num, long den = 1) {
  if (den == 0) throw OutOfRange("rational with zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

inline Rat make_rat(const Int& num, const Int& den) {
  if (den == 0) throw OutOfRange("rational with zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

// Accepts "a" or "a/b" with optional leading '-'; bases are decimal.
inline Rat parse_rat(std::string_view s) {
  std::string t(s);
  if (t.empty()) throw ParseError("empty rational literal");
  Rat r;
  if (r.set_str(t, 10) != 0) throw ParseError("bad rational literal: " + t);
  if (r.get_den() == 0) throw ParseError("zero denominator in rational literal: " + t);
  r.canonicalize();
  return r;
}

// "num/den" when den != 1, plain "num" otherwise (canonical GMP semantics).
inline std::string rat_str(const Rat& r) { return r.get_str(); }

inline std::string int_str(const Int& n) { return n.get_str(); }

inline bool is_zero(const Rat& r) { return sgn(r) == 0; }

inline Rat fdiv(const Rat& a, const Rat& b) {
  if (sgn(b) == 0) throw InternalInconsistency("division by zero rational");
  return a / b;
}

inline Int factorial(unsigned long n) {
  Int f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return f;
}

// n! / k!  for n >= k  (product of k+1..n).
inline Int falling_ratio(unsigned long n, unsigned long k) {
  internal_check(n >= k, "falling_ratio needs n >= k");
  Int f(1);
  for (unsigned long j = k + 1; j <= n; ++j) f *= static_cast<unsigned long>(j);
  return f;
}

inline Int binomial(unsigned long n, unsigned long k) {
  Int b;
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  return b;
}

}  // namespace wahllab
