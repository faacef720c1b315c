#pragma once

// Truncated power series ("jets") with explicit truncation bookkeeping: a jet
// of order N knows coefficients of z^0..z^N and nothing beyond.  Every
// operation returns the largest order it can honestly certify, so truncation
// errors surface as order bookkeeping instead of silent garbage.
//
// Rational multiplication clears denominators first and convolves over the
// integers (one canonicalization per output coefficient).  On the long jets
// this pipeline lives on, that is an order of magnitude faster than
// convolving mpq values directly.

#include <vector>

#include "wahllab/errors.hpp"
#include "wahllab/matrix.hpp"
#include "wahllab/rational.hpp"

namespace wahllab {

template <class T>
class Jet {
 public:
  explicit Jet(std::vector<T> coeffs) : c_(std::move(coeffs)) {
    if (c_.empty()) throw OutOfRange("jet needs at least a constant term");
  }

  static Jet zero(int order) { return Jet(std::vector<T>(check_order(order) + 1)); }

  static Jet constant(const T& value, int order) {
    Jet j = zero(order);
    j.c_[0] = value;
    return j;
  }

  // The coordinate itself: value + z.
  static Jet variable(const T& value, int order) {
    if (order < 1) throw OutOfRange("variable jet needs order >= 1");
    Jet j = zero(order);
    j.c_[0] = value;
    j.c_[1] = ScalarOps<T>::one();
    return j;
  }

  int order() const { return static_cast<int>(c_.size()) - 1; }

  const T& coeff(int k) const {
    if (k < 0 || k > order())
      throw OutOfRange("jet coefficient index outside known order");
    return c_[static_cast<size_t>(k)];
  }

  T& coeff_mut(int k) { return c_[static_cast<size_t>(k)]; }

  const std::vector<T>& coeffs() const { return c_; }

  bool is_zero() const {
    for (const T& x : c_)
      if (!wahllab::is_zero(x)) return false;
    return true;
  }

  friend Jet operator+(const Jet& a, const Jet& b) {
    int n = std::min(a.order(), b.order());
    std::vector<T> out(static_cast<size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) out[k] = a.c_[k] + b.c_[k];
    return Jet(std::move(out));
  }

  friend Jet operator-(const Jet& a, const Jet& b) {
    int n = std::min(a.order(), b.order());
    std::vector<T> out(static_cast<size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) out[k] = a.c_[k] - b.c_[k];
    return Jet(std::move(out));
  }

  Jet operator-() const {
    std::vector<T> out(c_.size());
    for (size_t k = 0; k < c_.size(); ++k) out[k] = -c_[k];
    return Jet(std::move(out));
  }

  friend Jet operator*(const T& s, const Jet& a) {
    std::vector<T> out(a.c_.size());
    for (size_t k = 0; k < a.c_.size(); ++k) out[k] = s * a.c_[k];
    return Jet(std::move(out));
  }

  bool operator==(const Jet& o) const { return c_ == o.c_; }
  bool operator!=(const Jet& o) const { return !(*this == o); }

 private:
  static int check_order(int order) {
    if (order < 0) throw OutOfRange("negative jet order");
    return order;
  }
  std::vector<T> c_;
};

using JetQ = Jet<Rat>;

namespace detail {

struct ScaledJet {
  std::vector<Int> num;
  Int den;
};

inline ScaledJet scale_to_int(const JetQ& a) {
  ScaledJet s;
  s.den = 1;
  for (const Rat& c : a.coeffs()) s.den = lcm(s.den, Int(c.get_den()));
  s.num.reserve(a.coeffs().size());
  for (const Rat& c : a.coeffs()) s.num.push_back(c.get_num() * (s.den / c.get_den()));
  return s;
}

}  // namespace detail

// Product truncated to min(max_order, both input orders).
template <class T>
Jet<T> jet_mul_trunc(const Jet<T>& a, const Jet<T>& b, int max_order) {
  int n = std::min({max_order, a.order(), b.order()});
  if (n < 0) throw OutOfRange("negative product order");
  if constexpr (std::is_same_v<T, Rat>) {
    detail::ScaledJet sa = detail::scale_to_int(a);
    detail::ScaledJet sb = detail::scale_to_int(b);
    Int dd = sa.den * sb.den;
    std::vector<Rat> out(static_cast<size_t>(n) + 1);
    Int acc;
    for (int k = 0; k <= n; ++k) {
      acc = 0;
      for (int i = 0; i <= k; ++i) {
        if (sgn(sa.num[i]) == 0 || sgn(sb.num[k - i]) == 0) continue;
        mpz_addmul(acc.get_mpz_t(), sa.num[i].get_mpz_t(),
                   sb.num[k - i].get_mpz_t());
      }
      if (sgn(acc) != 0) out[k] = make_rat(acc, dd);
    }
    return Jet<T>(std::move(out));
  } else {
    std::vector<T> out(static_cast<size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) {
      T acc{};
      for (int i = 0; i <= k; ++i) acc += a.coeff(i) * b.coeff(k - i);
      out[k] = acc;
    }
    return Jet<T>(std::move(out));
  }
}

template <class T>
Jet<T> jet_mul(const Jet<T>& a, const Jet<T>& b) {
  return jet_mul_trunc(a, b, std::min(a.order(), b.order()));
}

// t-fold derivative; each application certifies one order less.
template <class T>
Jet<T> jet_derivative(const Jet<T>& a, int times = 1) {
  if (times < 0) throw OutOfRange("negative derivative count");
  if (times > a.order())
    throw OrderExhausted("derivative count exceeds jet order " +
                         std::to_string(a.order()));
  std::vector<T> cur = a.coeffs();
  for (int t = 0; t < times; ++t) {
    std::vector<T> next(cur.size() - 1);
    for (size_t k = 0; k + 1 < cur.size(); ++k)
      next[k] = ScalarOps<T>::from_ulong(k + 1) * cur[k + 1];
    cur = std::move(next);
  }
  return Jet<T>(std::move(cur));
}

// Multiplicative inverse: a * result = 1 + O(z^{N+1}), N = a.order().
template <class T>
Jet<T> jet_reciprocal(const Jet<T>& a) {
  if (is_zero(a.coeff(0)))
    throw ZeroConstantTerm("reciprocal of a jet vanishing at the base point");
  int n = a.order();
  std::vector<T> out(static_cast<size_t>(n) + 1);
  T inv0 = fdiv(ScalarOps<T>::one(), a.coeff(0));
  out[0] = inv0;
  for (int k = 1; k <= n; ++k) {
    T acc = ScalarOps<T>::zero();
    for (int j = 1; j <= k; ++j) acc += a.coeff(j) * out[k - j];
    out[k] = -(inv0 * acc);
  }
  return Jet<T>(std::move(out));
}

template <class T>
Jet<T> jet_truncate(const Jet<T>& a, int order) {
  if (order < 0 || order > a.order())
    throw OutOfRange("truncation order outside known range");
  std::vector<T> out(a.coeffs().begin(), a.coeffs().begin() + order + 1);
  return Jet<T>(std::move(out));
}

// Zero-pad to a higher order.  The padding is a *guess*, not knowledge; only
// iteration schemes that correct their own tails (Newton) may rely on it.
template <class T>
Jet<T> jet_extend_zero(const Jet<T>& a, int order) {
  if (order < a.order()) throw OutOfRange("extension below current order");
  std::vector<T> out = a.coeffs();
  out.resize(static_cast<size_t>(order) + 1);
  return Jet<T>(std::move(out));
}

template <class T>
bool is_zero_through(const Jet<T>& a, int k) {
  internal_check(k <= a.order(), "zero test beyond known jet order");
  for (int i = 0; i <= k; ++i)
    if (!is_zero(a.coeff(i))) return false;
  return true;
}

}  // namespace wahllab
