#pragma once

// Higher Gaussian maps of the canonical bundle, computed through frame jets.
//
// A quadric Q = sum a_ij w_i w_j (a symmetric) lies in the kernel of the
// level-m map exactly when the local identities
//
//     M_{h,k}(Q) = sum_ij a_ij f_i^(h) f_j^(k)  ==  0     for all h+k <= m+1
//
// hold, and then the level-(m+2) image is the weight-(m+4) form
//
//     mu_{m+2}(Q) = (-1)^k sum_ij a_ij f_i^(m+2-k) f_j^(k) (dz)^{m+4},
//
// the same for every k in 0..m+2.  Two structural facts keep the finite
// computation honest.  First, once every antidiagonal below t vanishes
// identically, differentiating M_{h,k} shows the entries along antidiagonal t
// alternate sign, so they all vanish as soon as M_{t,0} does; combined with
// the symmetry M_{h,k} = M_{k,h} this forces every odd antidiagonal to vanish
// for free, which is why kernels filter in steps of two.  Second, under the
// same hypothesis M_{t,0} is the local expression of a global form of weight
// t+2, so vanishing through z^{(t+2)(2g-2)} certifies identical vanishing.
// Every zero test below quotes exactly that order.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "wahllab/curve.hpp"
#include "wahllab/modular.hpp"
#include "wahllab/threads.hpp"

namespace wahllab {

// --- coordinates on quadrics ------------------------------------------------
// Pairs (i,j), i <= j, in lexicographic order.  A coordinate vector q maps to
// the symmetric matrix a via a_ii = q_ii and a_ij = a_ji = q_ij / 2, so that
// Q = sum_{i<=j} q_ij w_i w_j = sum_{i,j} a_ij w_i w_j.

inline int sym_dim(int g) { return g * (g + 1) / 2; }

inline std::vector<std::pair<int, int>> sym_pairs(int g) {
  std::vector<std::pair<int, int>> out;
  out.reserve(static_cast<size_t>(sym_dim(g)));
  for (int i = 0; i < g; ++i)
    for (int j = i; j < g; ++j) out.emplace_back(i, j);
  return out;
}

struct Quadric {
  RatMatrix a;  // symmetric g x g

  int genus() const { return a.rows(); }

  bool is_zero() const {
    for (int i = 0; i < a.rows(); ++i)
      for (int j = 0; j < a.cols(); ++j)
        if (!wahllab::is_zero(a.at(i, j))) return false;
    return true;
  }
};

inline Quadric quadric_from_coords(const std::vector<Rat>& q, int g) {
  if (static_cast<int>(q.size()) != sym_dim(g))
    throw OutOfRange("coordinate vector length differs from g(g+1)/2");
  Quadric out{RatMatrix(g, g)};
  int idx = 0;
  for (int i = 0; i < g; ++i)
    for (int j = i; j < g; ++j, ++idx) {
      if (i == j) {
        out.a.at(i, i) = q[idx];
      } else {
        Rat half = q[idx] / 2;
        out.a.at(i, j) = half;
        out.a.at(j, i) = half;
      }
    }
  return out;
}

inline std::vector<Rat> coords_of(const Quadric& quad) {
  int g = quad.genus();
  for (int i = 0; i < g; ++i)
    for (int j = i + 1; j < g; ++j)
      internal_check(quad.a.at(i, j) == quad.a.at(j, i),
                     "quadric matrix is not symmetric");
  std::vector<Rat> q;
  q.reserve(static_cast<size_t>(sym_dim(g)));
  for (int i = 0; i < g; ++i)
    for (int j = i; j < g; ++j)
      q.push_back(i == j ? quad.a.at(i, i) : Rat(2) * quad.a.at(i, j));
  return q;
}

// --- the pairing M_{h,k} ------------------------------------------------------
// sum_ij a_ij f_i^(h) f_j^(k), computed as sum_i f_i^(h) * (sum_j a_ij f_j^(k))
// so that only g full convolutions are needed.

template <class T>
Jet<T> pairing_jet(const std::vector<Jet<T>>& frames, const Matrix<T>& a,
                   int h, int k, int max_order) {
  int g = static_cast<int>(frames.size());
  internal_check(a.rows() == g && a.cols() == g, "quadric size differs from genus");
  std::vector<Jet<T>> dk;
  dk.reserve(static_cast<size_t>(g));
  for (int j = 0; j < g; ++j) dk.push_back(jet_derivative(frames[j], k));
  int n = frames[0].order();
  int out_order = std::min(max_order, n - std::max(h, k));
  if (out_order < 0)
    throw OrderExhausted("pairing derivatives exhaust the frame order");
  Jet<T> acc = Jet<T>::zero(out_order);
  for (int i = 0; i < g; ++i) {
    Jet<T> u = Jet<T>::zero(n - k);
    bool any = false;
    for (int j = 0; j < g; ++j) {
      const T& aij = a.at(i, j);
      if (is_zero(aij)) continue;
      u = u + aij * dk[j];
      any = true;
    }
    if (!any) continue;
    acc = acc + jet_mul_trunc(jet_derivative(frames[i], h), u, out_order);
  }
  return acc;
}

// --- level-0 kernel -----------------------------------------------------------
// Quadrics through the canonical image: kernel of the multiplication map
// Sym^2 -> weight-2 sections, in the pair coordinates above.

inline Subspace quadric_space(const CurveModel& model) {
  int g = model.genus();
  int t = 2 * (2 * g - 2);
  if (model.order() < t)
    throw InsufficientOrder("quadric space needs order " + std::to_string(t) +
                            ", model has " + std::to_string(model.order()));
  std::vector<std::pair<int, int>> pairs = sym_pairs(g);
  int cols = static_cast<int>(pairs.size());
  RatMatrix m(t + 1, cols);
  std::vector<JetQ> prods(pairs.size(), JetQ::zero(0));
  parallel_for(cols, [&](int c) {
    prods[c] = jet_mul_trunc(model.frame(pairs[c].first),
                             model.frame(pairs[c].second), t);
  });
  for (int c = 0; c < cols; ++c)
    for (int k = 0; k <= t; ++k) m.at(k, c) = prods[c].coeff(k);
  return kernel(m);
}

// --- the level map as a series -------------------------------------------------

inline int mu_required_order(int g, int target) {
  return (target + 2) * (2 * g - 2) + target;
}

namespace detail {

// Certify that Q lies in the kernel at the level below `target`, by the even
// antidiagonal identities (odd ones vanish for free, see the header comment).
inline void require_kernel_membership(const CurveModel& model, const Quadric& q,
                                      int target) {
  int g = model.genus();
  for (int t = 0; t + 2 <= target; t += 2) {
    int zt = (t + 2) * (2 * g - 2);
    JetQ s = pairing_jet(model.frames(), q.a, t, 0, zt);
    if (s.order() < zt || !is_zero_through(s, zt))
      throw NotInKernel("the level-" + std::to_string(t) +
                        " identity fails: the quadric is not in the kernel "
                        "below level " + std::to_string(target));
  }
}

}  // namespace detail

// Series of the level-`target` image of Q (target = m+2 for Q at level m).
// Any k_choice in 0..target gives the same jet; exposing the choice makes the
// equality an executable property rather than a trusted identity.
inline JetQ mu_series(const CurveModel& model, const Quadric& q, int target,
                      int k_choice = 0) {
  int g = model.genus();
  if (q.genus() != g) throw OutOfRange("quadric size differs from genus");
  if (target < 2 || target % 2 != 0)
    throw OutOfRange("target level must be even and >= 2");
  if (k_choice < 0 || k_choice > target)
    throw OutOfRange("k_choice must lie in 0..target");
  int required = mu_required_order(g, target);
  if (model.order() < required)
    throw InsufficientOrder("level " + std::to_string(target) +
                            " series needs order " + std::to_string(required) +
                            ", model has " + std::to_string(model.order()));
  detail::require_kernel_membership(model, q, target);
  int out_order = model.order() - target;
  JetQ j = pairing_jet(model.frames(), q.a, target - k_choice, k_choice,
                       out_order);
  j = jet_truncate(j, out_order);
  return k_choice % 2 == 0 ? j : -j;
}

inline Rat mu_eval_at_p(const CurveModel& model, const Quadric& q, int target) {
  return mu_series(model, q, target, 0).coeff(0);
}

// --- kernel filtration ----------------------------------------------------------

struct FiltrationLevel {
  int level = 0;        // 0, 2, 4, ...
  Subspace kernel;      // in pair coordinates
  bool strict_drop = false;
};

struct Filtration {
  int genus = 0;
  int max_level = 0;
  std::vector<FiltrationLevel> levels;  // index t holds level 2t
  int depth_level = -2;                 // deepest level with nonzero kernel
  int first_zero_level = -1;            // -1 when no zero level observed

  const Subspace& at_level(int level) const {
    if (level < 0 || level % 2 != 0 || level > max_level)
      throw OutOfRange("no such filtration level");
    return levels[static_cast<size_t>(level / 2)].kernel;
  }

  long dim_at(int level) const {  // with the convention dim(level<0) = sym_dim
    if (level < 0) return sym_dim(genus);
    return at_level(level).dim();
  }

  std::vector<long> dims() const {
    std::vector<long> out;
    for (const FiltrationLevel& l : levels) out.push_back(l.kernel.dim());
    return out;
  }
};

namespace detail {

// Shared level loop: bases[t] holds, as rref rows in pair coordinates, the
// kernel at level 2t.  Works over Q and over a prime field alike.
template <class T>
std::vector<Matrix<T>> filtration_bases(const std::vector<Jet<T>>& frames,
                                        int g, int max_level) {
  int n = frames[0].order();
  std::vector<std::pair<int, int>> pairs = sym_pairs(g);
  int sd = static_cast<int>(pairs.size());

  // level 0: kernel of the stacked weight-2 coefficient columns
  int t0 = 2 * (2 * g - 2);
  Matrix<T> m0(t0 + 1, sd);
  for (int c = 0; c < sd; ++c) {
    Jet<T> prod = jet_mul_trunc(frames[pairs[c].first], frames[pairs[c].second], t0);
    for (int k = 0; k <= t0; ++k) m0.at(k, c) = prod.coeff(k);
  }
  std::vector<Matrix<T>> bases;
  bases.push_back(kernel_rows(m0));

  for (int level = 2; level <= max_level; level += 2) {
    const Matrix<T>& prev = bases.back();
    int r = prev.rows();
    if (r == 0) {  // kernels are nested; zero stays zero
      bases.push_back(Matrix<T>(0, sd));
      continue;
    }
    int zt = (level + 2) * (2 * g - 2);
    internal_check(n - level >= zt, "insufficient frame order inside level loop");
    // column b carries the image series of basis member b, so the kernel of
    // this matrix is exactly the set of member combinations with zero image
    Matrix<T> images(zt + 1, r);
    for (int b = 0; b < r; ++b) {
      // membership of prev rows is certified by construction; only the new
      // level-`level` identity is being tested here
      Matrix<T> a(g, g);
      int idx = 0;
      for (int i = 0; i < g; ++i)
        for (int j = i; j < g; ++j, ++idx) {
          const T& qc = prev.at(b, idx);
          if (i == j) {
            a.at(i, i) = qc;
          } else {
            T half = fdiv(qc, ScalarOps<T>::from_ulong(2));
            a.at(i, j) = half;
            a.at(j, i) = half;
          }
        }
      Jet<T> img = pairing_jet(frames, a, level, 0, zt);
      for (int k = 0; k <= zt; ++k) images.at(k, b) = img.coeff(k);
    }
    Matrix<T> combo = kernel_rows(images);          // coefficients w.r.t. prev rows
    Matrix<T> next = mat_mul(combo, prev);          // back to pair coordinates
    Echelon<T> canon = rref(next);
    Matrix<T> basis(static_cast<int>(canon.pivots.size()), sd);
    for (int row = 0; row < basis.rows(); ++row)
      basis.set_row(row, canon.reduced.row(row));
    bases.push_back(std::move(basis));
  }
  return bases;
}

}  // namespace detail

// Exact filtration with per-member verification of the defining identities.
// enforce_non_hyperelliptic guards the statements that exclude hyperelliptic
// curves; pass false to inspect the raw chain of such a model anyway.
inline Filtration kernel_filtration(const CurveModel& model, int max_level,
                                    bool enforce_non_hyperelliptic = true) {
  int g = model.genus();
  if (max_level < 0 || max_level % 2 != 0)
    throw OutOfRange("max_level must be even and >= 0");
  if (max_level > 6 * g - 6)
    throw OutOfRange("levels beyond 6g-6 carry no information (kernels are 0)");
  if (enforce_non_hyperelliptic && model.hyperelliptic())
    throw HyperellipticExcluded(
        "the kernel chain statements assume a non-hyperelliptic curve; "
        "rerun with the control flag to inspect the raw chain");
  int required = max_level == 0 ? 2 * (2 * g - 2)
                                : mu_required_order(g, max_level);
  if (model.order() < required)
    throw InsufficientOrder("filtration to level " + std::to_string(max_level) +
                            " needs order " + std::to_string(required) +
                            ", model has " + std::to_string(model.order()));

  std::vector<RatMatrix> bases =
      detail::filtration_bases(model.frames(), g, max_level);

  Filtration out;
  out.genus = g;
  out.max_level = max_level;
  long prev_dim = sym_dim(g);
  for (size_t t = 0; t < bases.size(); ++t) {
    FiltrationLevel lvl;
    lvl.level = static_cast<int>(2 * t);
    lvl.kernel = Subspace::from_rows(sym_dim(g), bases[t]);
    lvl.strict_drop = lvl.kernel.dim() < prev_dim;
    prev_dim = lvl.kernel.dim();
    out.levels.push_back(std::move(lvl));
  }

  // Verification pass: every basis member of every level must satisfy the
  // even antidiagonal identity that defines its level, recomputed from the
  // frames; nesting must hold as canonical containment.
  for (size_t t = 0; t < out.levels.size(); ++t) {
    const FiltrationLevel& lvl = out.levels[t];
    if (t > 0)
      internal_check(out.levels[t - 1].kernel.contains(lvl.kernel),
                     "filtration nesting violated");
    int zt = (lvl.level + 2) * (2 * g - 2);
    for (int b = 0; b < lvl.kernel.dim(); ++b) {
      Quadric q = quadric_from_coords(lvl.kernel.basis().row(b), g);
      bool ok = true;
      for (int h = 0; ok && 2 * h <= lvl.level; ++h) {
        JetQ s = pairing_jet(model.frames(), q.a, lvl.level - h, h, zt);
        ok = s.order() >= zt ? is_zero_through(s, zt) : s.is_zero();
      }
      internal_check(ok, "kernel member fails its defining identity");
    }
  }

  out.depth_level = -2;
  out.first_zero_level = -1;
  for (const FiltrationLevel& lvl : out.levels) {
    if (lvl.kernel.dim() > 0) out.depth_level = lvl.level;
    if (lvl.kernel.dim() == 0 && out.first_zero_level < 0)
      out.first_zero_level = lvl.level;
  }
  return out;
}

// Level of a quadric: the largest even level whose kernel contains it.
// Returns -2 when Q is not even in the level-0 kernel.
inline int quadric_level(const Filtration& filt, const Quadric& q) {
  if (q.is_zero())
    throw LevelUndetermined("the zero quadric belongs to every kernel");
  std::vector<Rat> coords = coords_of(q);
  int level = -2;
  for (const FiltrationLevel& lvl : filt.levels) {
    if (!lvl.kernel.contains(coords)) break;
    level = lvl.level;
  }
  return level;
}

// --- wedge map on canonical frames ----------------------------------------------

inline JetQ mu1_wedge(const CurveModel& model, int i, int j) {
  int g = model.genus();
  if (i < 1 || j < 1 || i > g || j > g)
    throw OutOfRange("wedge indices must lie in 1..g");
  const JetQ& fi = model.frame(i - 1);
  const JetQ& fj = model.frame(j - 1);
  return jet_mul(jet_derivative(fi), jet_truncate(fj, fj.order() - 1)) -
         jet_mul(jet_derivative(fj), jet_truncate(fi, fi.order() - 1));
}

// --- rank report against the (l+1)^2 bounds --------------------------------------

struct RankRow {
  int l = 0;
  int level = 0;             // 6g-6-2l
  long kernel_dim_below = 0;  // dim ker at level-2 (the bound's subject)
  long rank_at_level = 0;     // dim ker(level-2) - dim ker(level)
  long bound = 0;             // (l+1)^2
  bool kernel_ok = false;
  bool rank_ok = false;
  bool informative = false;  // (l+1)^2 <= (g-1)(12g-9-4l)
};

struct RankReport {
  int genus = 0;
  std::vector<RankRow> rows;
  bool all_pass = false;
  long top_kernel_dim = 0;    // dim ker at level 6g-6 (must be 0)
  int max_informative_l = -1;
  double informative_threshold = 0.0;  // 1-2g+sqrt((g-1)(16g-9))
};

inline RankReport rank_report(const Filtration& filt, int g) {
  if (filt.genus != g) throw OutOfRange("genus differs from the filtration's");
  if (filt.max_level != 6 * g - 6 ||
      static_cast<int>(filt.levels.size()) != 3 * g - 2)
    throw IncompleteFiltration("rank report needs the chain through level 6g-6");
  RankReport out;
  out.genus = g;
  out.top_kernel_dim = filt.dim_at(6 * g - 6);
  out.all_pass = true;
  for (int l = 0; l <= 3 * g - 3; ++l) {
    RankRow row;
    row.l = l;
    row.level = 6 * g - 6 - 2 * l;
    row.kernel_dim_below = filt.dim_at(row.level - 2);
    row.rank_at_level = row.kernel_dim_below - filt.dim_at(row.level);
    row.bound = static_cast<long>(l + 1) * (l + 1);
    row.kernel_ok = row.kernel_dim_below <= row.bound;
    row.rank_ok = row.rank_at_level <= row.bound;
    row.informative =
        row.bound <= static_cast<long>(g - 1) * (12 * g - 9 - 4 * l);
    if (row.informative) out.max_informative_l = l;
    out.all_pass = out.all_pass && row.kernel_ok && row.rank_ok;
    out.rows.push_back(row);
  }
  out.informative_threshold =
      1.0 - 2.0 * g + std::sqrt(static_cast<double>(g - 1) * (16 * g - 9));
  return out;
}

// --- modular mirror ----------------------------------------------------------------
// The same level loop over random prime fields; advisory only.

struct ModularChain {
  uint64_t prime = 0;
  std::vector<long> dims;
};

inline std::vector<ModularChain> filtration_dims_modular(
    const CurveModel& model, int max_level, int prime_count = 2,
    uint64_t seed = kDefaultModularSeed) {
  if (prime_count < 1) throw OutOfRange("need at least one prime");
  if (max_level < 0 || max_level % 2 != 0)
    throw OutOfRange("max_level must be even and >= 0");
  std::mt19937_64 rng(seed);
  std::vector<ModularChain> out;
  for (int k = 0; k < prime_count; ++k) {
    bool done = false;
    for (int attempt = 0; attempt < 16 && !done; ++attempt) {
      uint64_t p = random_prime62(rng);
      FpScope scope(p);
      std::vector<Jet<Fp>> frames;
      bool reduced = true;
      for (const JetQ& f : model.frames()) {
        std::vector<Fp> c;
        c.reserve(f.coeffs().size());
        for (const Rat& x : f.coeffs()) {
          std::optional<Fp> fx = reduce_rat(x);
          if (!fx) { reduced = false; break; }
          c.push_back(*fx);
        }
        if (!reduced) break;
        frames.emplace_back(std::move(c));
      }
      if (!reduced) continue;
      std::vector<Matrix<Fp>> bases =
          detail::filtration_bases(frames, model.genus(), max_level);
      ModularChain chain;
      chain.prime = p;
      for (const Matrix<Fp>& b : bases) chain.dims.push_back(b.rows());
      out.push_back(std::move(chain));
      done = true;
    }
    if (!done)
      throw DenominatorDivisiblePrime(
          "frame denominators hit every sampled prime; retries exhausted");
  }
  return out;
}

}  // namespace wahllab
