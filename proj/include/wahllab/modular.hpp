#pragma once

// 64-bit prime fields for the probabilistic fast path.  The active modulus is
// a thread-local installed by FpScope, so Matrix<Fp>/Jet<Fp> reuse the generic
// templates without every element dragging a modulus around.  Ranks computed
// mod p never exceed the rational rank, so the maximum over a few random
// 62-bit primes equals the exact rank unless every chosen prime divides the
// same nonzero minor — vanishingly unlikely and flagged as advisory anyway.

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "wahllab/matrix.hpp"

namespace wahllab {

namespace detail {

inline thread_local uint64_t fp_modulus = 0;

inline uint64_t mulmod(uint64_t a, uint64_t b, uint64_t p) {
  return static_cast<uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

inline uint64_t powmod(uint64_t a, uint64_t e, uint64_t p) {
  uint64_t r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

}  // namespace detail

class FpScope {
 public:
  explicit FpScope(uint64_t p) : saved_(detail::fp_modulus) {
    internal_check(p > 2, "prime-field modulus must exceed 2");
    detail::fp_modulus = p;
  }
  ~FpScope() { detail::fp_modulus = saved_; }
  FpScope(const FpScope&) = delete;
  FpScope& operator=(const FpScope&) = delete;

 private:
  uint64_t saved_;
};

struct Fp {
  uint64_t v{0};

  static uint64_t modulus() {
    internal_check(detail::fp_modulus != 0, "prime-field op outside FpScope");
    return detail::fp_modulus;
  }

  friend Fp operator+(Fp a, Fp b) {
    uint64_t p = modulus(), s = a.v + b.v;
    return Fp{s >= p ? s - p : s};
  }
  friend Fp operator-(Fp a, Fp b) {
    uint64_t p = modulus();
    return Fp{a.v >= b.v ? a.v - b.v : a.v + p - b.v};
  }
  friend Fp operator*(Fp a, Fp b) { return Fp{detail::mulmod(a.v, b.v, modulus())}; }
  Fp operator-() const { return v ? Fp{modulus() - v} : Fp{0}; }
  Fp& operator+=(Fp o) { return *this = *this + o; }
  Fp& operator-=(Fp o) { return *this = *this - o; }
  Fp& operator*=(Fp o) { return *this = *this * o; }
  friend bool operator==(Fp a, Fp b) { return a.v == b.v; }
  friend bool operator!=(Fp a, Fp b) { return a.v != b.v; }
};

inline bool is_zero(Fp a) { return a.v == 0; }

inline Fp fp_inv(Fp a) {
  internal_check(a.v != 0, "inverse of zero in prime field");
  return Fp{detail::powmod(a.v, Fp::modulus() - 2, Fp::modulus())};
}

inline Fp fdiv(Fp a, Fp b) { return a * fp_inv(b); }

template <>
struct ScalarOps<Fp> {
  static Fp zero() { return Fp{0}; }
  static Fp one() { return Fp{1}; }
  static Fp from_ulong(unsigned long n) { return Fp{n % Fp::modulus()}; }
};

inline Echelon<Fp> rref(const Matrix<Fp>& m) { return rref_field(m); }

// Deterministic Miller-Rabin, exact for all n < 2^64 with this base set.
inline bool is_prime_u64(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull,
                     29ull, 31ull, 37ull}) {
    if (n == q) return true;
    if (n % q == 0) return false;
  }
  uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) { d >>= 1; ++s; }
  for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull,
                     29ull, 31ull, 37ull}) {
    uint64_t x = detail::powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = detail::mulmod(x, x, n);
      if (x == n - 1) { composite = false; break; }
    }
    if (composite) return false;
  }
  return true;
}

inline uint64_t random_prime62(std::mt19937_64& rng) {
  std::uniform_int_distribution<uint64_t> dist(uint64_t(1) << 61,
                                               (uint64_t(1) << 62) - 1);
  for (;;) {
    uint64_t n = dist(rng) | 1;
    while (n < (uint64_t(1) << 62) && !is_prime_u64(n)) n += 2;
    if (is_prime_u64(n)) return n;
  }
}

// Reduction mod the scoped prime; empty when the denominator vanishes mod p.
inline std::optional<Fp> reduce_rat(const Rat& r) {
  uint64_t p = Fp::modulus();
  uint64_t den = mpz_fdiv_ui(r.get_den().get_mpz_t(), p);
  if (den == 0) return std::nullopt;
  uint64_t num = mpz_fdiv_ui(r.get_num().get_mpz_t(), p);
  Fp out = Fp{num} * fp_inv(Fp{den});
  return out;
}

inline std::optional<Matrix<Fp>> reduce_matrix(const RatMatrix& a) {
  Matrix<Fp> m(a.rows(), a.cols());
  for (int r = 0; r < a.rows(); ++r)
    for (int c = 0; c < a.cols(); ++c) {
      std::optional<Fp> x = reduce_rat(a.at(r, c));
      if (!x) return std::nullopt;
      m.at(r, c) = *x;
    }
  return m;
}

struct ModularRank {
  long rank = 0;
  std::vector<uint64_t> primes;
};

inline constexpr uint64_t kDefaultModularSeed = 0x5eed1ab5ca1ab1eULL;

// Max rank over `prime_count` random 62-bit primes.  A prime whose reduction
// hits a denominator is replaced (bounded retries) rather than reported.
inline ModularRank rank_modular(const RatMatrix& a, int prime_count = 2,
                                uint64_t seed = kDefaultModularSeed) {
  if (prime_count < 1) throw OutOfRange("rank_modular needs at least one prime");
  std::mt19937_64 rng(seed);
  ModularRank out;
  for (int k = 0; k < prime_count; ++k) {
    bool done = false;
    for (int attempt = 0; attempt < 16 && !done; ++attempt) {
      uint64_t p = random_prime62(rng);
      FpScope scope(p);
      std::optional<Matrix<Fp>> m = reduce_matrix(a);
      if (!m) continue;
      long r = rref(*m).rank();
      out.rank = std::max(out.rank, r);
      out.primes.push_back(p);
      done = true;
    }
    if (!done)
      throw DenominatorDivisiblePrime(
          "matrix denominators hit every sampled prime; retries exhausted");
  }
  return out;
}

}  // namespace wahllab
