#pragma once

// Dense matrices over an exact field, reduced row-echelon form, kernels, and
// canonical subspaces.  The rational elimination keeps all intermediate
// arithmetic over the integers (cross-multiplication with per-row content
// stripping and a smallest-pivot rule) so coefficient growth stays bounded by
// minor sizes instead of exploding through rational normalization.

#include <algorithm>
#include <vector>

#include "wahllab/errors.hpp"
#include "wahllab/rational.hpp"

namespace wahllab {

template <class T>
struct ScalarOps;  // zero()/one() for the fields we instantiate over

template <>
struct ScalarOps<Rat> {
  static Rat zero() { return Rat(0); }
  static Rat one() { return Rat(1); }
  static Rat from_ulong(unsigned long n) { return Rat(n); }
};

template <class T>
class Matrix {
 public:
  Matrix() : rows_(0), cols_(0) {}
  Matrix(int rows, int cols)
      : rows_(rows), cols_(cols), e_(static_cast<size_t>(rows) * cols) {
    if (rows < 0 || cols < 0) throw OutOfRange("negative matrix dimension");
  }

  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = ScalarOps<T>::one();
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  T& at(int r, int c) { return e_[static_cast<size_t>(r) * cols_ + c]; }
  const T& at(int r, int c) const { return e_[static_cast<size_t>(r) * cols_ + c]; }

  std::vector<T> row(int r) const {
    std::vector<T> out(cols_);
    for (int c = 0; c < cols_; ++c) out[c] = at(r, c);
    return out;
  }

  void set_row(int r, const std::vector<T>& v) {
    internal_check(static_cast<int>(v.size()) == cols_, "set_row width mismatch");
    for (int c = 0; c < cols_; ++c) at(r, c) = v[c];
  }

  bool operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
  }
  bool operator!=(const Matrix& o) const { return !(*this == o); }

 private:
  int rows_, cols_;
  std::vector<T> e_;
};

using RatMatrix = Matrix<Rat>;

template <class T>
Matrix<T> from_rows(const std::vector<std::vector<T>>& rows, int cols) {
  Matrix<T> m(static_cast<int>(rows.size()), cols);
  for (int r = 0; r < m.rows(); ++r) m.set_row(r, rows[r]);
  return m;
}

template <class T>
Matrix<T> mat_mul(const Matrix<T>& a, const Matrix<T>& b) {
  internal_check(a.cols() == b.rows(), "mat_mul shape mismatch");
  Matrix<T> c(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      const T& aik = a.at(i, k);
      if (is_zero(aik)) continue;
      for (int j = 0; j < b.cols(); ++j) c.at(i, j) += aik * b.at(k, j);
    }
  return c;
}

template <class T>
struct Echelon {
  Matrix<T> reduced;        // reduced row-echelon form, zero rows at the bottom
  std::vector<int> pivots;  // pivot column of row r, r < pivots.size()
  long rank() const { return static_cast<long>(pivots.size()); }
};

// Generic Gauss-Jordan over a field; used for the prime-field instantiation.
template <class T>
Echelon<T> rref_field(Matrix<T> m) {
  std::vector<int> pivots;
  int pr = 0;
  for (int pc = 0; pc < m.cols() && pr < m.rows(); ++pc) {
    int sel = -1;
    for (int i = pr; i < m.rows(); ++i)
      if (!is_zero(m.at(i, pc))) { sel = i; break; }
    if (sel < 0) continue;
    if (sel != pr)
      for (int j = 0; j < m.cols(); ++j) std::swap(m.at(sel, j), m.at(pr, j));
    T inv = fdiv(ScalarOps<T>::one(), m.at(pr, pc));
    for (int j = pc; j < m.cols(); ++j) m.at(pr, j) = m.at(pr, j) * inv;
    for (int i = 0; i < m.rows(); ++i) {
      if (i == pr || is_zero(m.at(i, pc))) continue;
      T f = m.at(i, pc);
      for (int j = pc; j < m.cols(); ++j) m.at(i, j) = m.at(i, j) - f * m.at(pr, j);
    }
    pivots.push_back(pc);
    ++pr;
  }
  return {std::move(m), std::move(pivots)};
}

namespace detail {

// Clear denominators of one rational row; returns integer row times a positive
// scalar (the row's lcm of denominators), which spans the same line.
inline std::vector<Int> scale_row_to_int(const RatMatrix& a, int r) {
  Int den(1);
  for (int c = 0; c < a.cols(); ++c) den = lcm(den, Int(a.at(r, c).get_den()));
  std::vector<Int> out(a.cols());
  for (int c = 0; c < a.cols(); ++c)
    out[c] = a.at(r, c).get_num() * (den / a.at(r, c).get_den());
  return out;
}

inline void strip_content(std::vector<Int>& row, int from) {
  Int g(0);
  for (int c = from; c < static_cast<int>(row.size()); ++c) {
    if (sgn(row[c]) == 0) continue;
    g = gcd(g, row[c]);
    if (g == 1) return;
  }
  if (g <= 1) return;
  for (int c = from; c < static_cast<int>(row.size()); ++c)
    if (sgn(row[c]) != 0) row[c] /= g;
}

}  // namespace detail

// Exact reduced row-echelon form over the rationals.  Elimination runs on
// integer-scaled rows; back-substitution produces the (unique) rational rref.
inline Echelon<Rat> rref(const RatMatrix& a) {
  const int rows = a.rows(), cols = a.cols();
  std::vector<std::vector<Int>> z(rows);
  for (int r = 0; r < rows; ++r) z[r] = detail::scale_row_to_int(a, r);

  for (int r = 0; r < rows; ++r) detail::strip_content(z[r], 0);

  std::vector<int> pivots;
  int pr = 0;
  for (int pc = 0; pc < cols && pr < rows; ++pc) {
    int sel = -1;
    for (int i = pr; i < rows; ++i) {
      if (sgn(z[i][pc]) == 0) continue;
      if (sel < 0 ||
          mpz_cmpabs(z[i][pc].get_mpz_t(), z[sel][pc].get_mpz_t()) < 0)
        sel = i;
    }
    if (sel < 0) continue;
    std::swap(z[sel], z[pr]);
    for (int i = pr + 1; i < rows; ++i) {
      if (sgn(z[i][pc]) == 0) continue;
      Int g = gcd(z[pr][pc], z[i][pc]);
      Int bp = z[pr][pc] / g;  // multiplies the target row
      Int ai = z[i][pc] / g;   // multiplies the pivot row
      z[i][pc] = 0;
      for (int j = pc + 1; j < cols; ++j) {
        if (sgn(z[i][j]) != 0) z[i][j] *= bp;
        if (sgn(z[pr][j]) != 0) z[i][j] -= ai * z[pr][j];
      }
      detail::strip_content(z[i], pc + 1);
    }
    pivots.push_back(pc);
    ++pr;
  }

  const int npiv = static_cast<int>(pivots.size());
  RatMatrix out(rows, cols);
  for (int r = 0; r < npiv; ++r) {
    const Int& pv = z[r][pivots[r]];
    for (int j = pivots[r]; j < cols; ++j)
      if (sgn(z[r][j]) != 0) out.at(r, j) = make_rat(z[r][j], pv);
  }
  for (int r = npiv - 1; r >= 0; --r) {
    for (int r2 = 0; r2 < r; ++r2) {
      Rat c = out.at(r2, pivots[r]);
      if (is_zero(c)) continue;
      for (int j = pivots[r]; j < cols; ++j)
        out.at(r2, j) -= c * out.at(r, j);
    }
  }
  return {std::move(out), std::move(pivots)};
}

inline long rank(const RatMatrix& a) { return rref(a).rank(); }

// Right null space basis, canonicalized (rows form an rref matrix).
template <class T>
Matrix<T> kernel_rows(const Matrix<T>& a) {
  Echelon<T> e = rref(a);
  const int n = a.cols();
  std::vector<int> is_pivot(n, 0);
  for (int p : e.pivots) is_pivot[p] = 1;
  std::vector<std::vector<T>> basis;
  for (int f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    std::vector<T> v(n);
    v[f] = ScalarOps<T>::one();
    for (size_t r = 0; r < e.pivots.size(); ++r)
      v[e.pivots[r]] = -e.reduced.at(static_cast<int>(r), f);
    basis.push_back(std::move(v));
  }
  Matrix<T> b = from_rows(basis, n);
  Echelon<T> canon = rref(b);
  Matrix<T> out(b.rows(), n);
  for (int r = 0; r < static_cast<int>(canon.pivots.size()); ++r)
    out.set_row(r, canon.reduced.row(r));
  return out;
}

// A linear subspace of Q^ambient held by its unique rref basis.
class Subspace {
 public:
  Subspace() : ambient_(0) {}

  static Subspace from_rows(int ambient, const RatMatrix& rows) {
    internal_check(rows.cols() == ambient || rows.rows() == 0,
                   "subspace row width mismatch");
    Echelon<Rat> e = rref(rows.rows() ? rows : RatMatrix(0, ambient));
    Subspace s;
    s.ambient_ = ambient;
    s.pivots_ = e.pivots;
    s.basis_ = RatMatrix(static_cast<int>(e.pivots.size()), ambient);
    for (int r = 0; r < s.basis_.rows(); ++r) s.basis_.set_row(r, e.reduced.row(r));
    return s;
  }

  static Subspace zero(int ambient) {
    return from_rows(ambient, RatMatrix(0, ambient));
  }

  static Subspace full(int ambient) {
    return from_rows(ambient, RatMatrix::identity(ambient));
  }

  int ambient() const { return ambient_; }
  int dim() const { return basis_.rows(); }
  const RatMatrix& basis() const { return basis_; }
  const std::vector<int>& pivots() const { return pivots_; }

  // Residual of v after eliminating against the rref basis.
  std::vector<Rat> reduce(std::vector<Rat> v) const {
    internal_check(static_cast<int>(v.size()) == ambient_, "reduce width mismatch");
    for (int r = 0; r < basis_.rows(); ++r) {
      Rat c = v[pivots_[r]];
      if (is_zero(c)) continue;
      for (int j = pivots_[r]; j < ambient_; ++j) v[j] -= c * basis_.at(r, j);
    }
    return v;
  }

  bool contains(const std::vector<Rat>& v) const {
    for (const Rat& x : reduce(v))
      if (!is_zero(x)) return false;
    return true;
  }

  bool contains(const Subspace& other) const {
    if (other.ambient_ != ambient_) return false;
    for (int r = 0; r < other.basis_.rows(); ++r)
      if (!contains(other.basis_.row(r))) return false;
    return true;
  }

  bool operator==(const Subspace& o) const {
    return ambient_ == o.ambient_ && basis_ == o.basis_;
  }
  bool operator!=(const Subspace& o) const { return !(*this == o); }

 private:
  int ambient_;
  RatMatrix basis_;
  std::vector<int> pivots_;
};

inline Subspace kernel(const RatMatrix& a) {
  RatMatrix rows = kernel_rows(a);
  return Subspace::from_rows(a.cols(), rows);
}

}  // namespace wahllab
