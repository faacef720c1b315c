#pragma once

// Local models of a curve at a rational base point: the genus, and the jets
// of a canonical-form basis f_1..f_g in the local coordinate z, written
// against the trivialization dz.  Three presentations are supported:
//
//   PlaneSmooth    F(x,y) = 0, smooth, degree d >= 5.  Canonical forms are
//                  x^a y^b dx / F_y with a+b <= d-3; genus (d-1)(d-2)/2.
//   Hyperelliptic  y^2 = p(x), p squarefree of degree 2g+1 or 2g+2, g >= 2.
//                  Canonical forms are x^(i-1) dx / y.  Not eligible for the
//                  statements that assume a non-hyperelliptic curve; kept as
//                  the standard negative control.
//   LocalData      the frame jets themselves, for synthetic models.
//
// A weight-m monomial in the frames is the local expression of a global
// section of the m-canonical bundle, which has degree m(2g-2); such a section
// vanishing through z^{m(2g-2)} is identically zero.  That conversion of an
// analytic statement into finitely many coefficient equations is what every
// zero test downstream leans on.

#include <string>
#include <variant>
#include <vector>

#include "wahllab/jet.hpp"
#include "wahllab/matrix.hpp"
#include "wahllab/newton.hpp"
#include "wahllab/polynomial.hpp"

namespace wahllab {

struct PlaneSmooth {
  Poly2 f;
};

struct Hyperelliptic {
  Poly2 p;  // univariate in x
};

struct LocalData {
  int genus = 0;
  std::vector<JetQ> frames;
};

using CurvePresentation = std::variant<PlaneSmooth, Hyperelliptic, LocalData>;

struct RatPoint {
  Rat x, y;
};

enum class ModelKind { Plane, Hyper, Local };

inline JetQ jet_pow(const JetQ& a, int e, int max_order) {
  JetQ out = JetQ::constant(Rat(1), std::min(a.order(), max_order));
  for (int i = 0; i < e; ++i) out = jet_mul_trunc(out, a, max_order);
  return out;
}

class CurveModel {
 public:
  CurveModel(ModelKind kind, int genus, RatPoint base, std::vector<JetQ> frames)
      : kind_(kind), genus_(genus), base_(std::move(base)),
        frames_(std::move(frames)) {
    internal_check(static_cast<int>(frames_.size()) == genus_,
                   "frame count differs from genus");
    order_ = frames_.empty() ? 0 : frames_[0].order();
    for (const JetQ& f : frames_)
      internal_check(f.order() == order_, "frames have mixed orders");
  }

  ModelKind kind() const { return kind_; }
  int genus() const { return genus_; }
  const RatPoint& base() const { return base_; }
  int order() const { return order_; }
  const std::vector<JetQ>& frames() const { return frames_; }
  const JetQ& frame(int i) const { return frames_[static_cast<size_t>(i)]; }
  bool hyperelliptic() const { return kind_ == ModelKind::Hyper; }

  // One past the largest weight whose zero test the model order supports.
  bool supports_zero_test(int weight) const {
    return order_ >= weight * (2 * genus_ - 2);
  }

 private:
  ModelKind kind_;
  int genus_;
  RatPoint base_;
  int order_;
  std::vector<JetQ> frames_;
};

namespace detail {

inline void check_frame_independence(const std::vector<JetQ>& frames,
                                     bool user_data) {
  int g = static_cast<int>(frames.size());
  int n = frames[0].order();
  RatMatrix m(g, n + 1);
  for (int i = 0; i < g; ++i)
    for (int k = 0; k <= n; ++k) m.at(i, k) = frames[i].coeff(k);
  if (rank(m) == g) return;
  if (user_data)
    throw DegenerateModel("frame jets are linearly dependent to the given order");
  throw InternalInconsistency("constructed frames are dependent");
}

inline CurveModel build_plane(const PlaneSmooth& pres, const RatPoint& p,
                              int order) {
  int d = pres.f.total_degree();
  if (d < 5)
    throw GenusTooSmall("plane models need degree >= 5 (got " +
                        std::to_string(d) + ")");
  int g = (d - 1) * (d - 2) / 2;
  JetQ y = newton_branch(pres.f, p.x, p.y, order);
  JetQ x = order >= 1 ? JetQ::variable(p.x, order) : JetQ::constant(p.x, 0);
  JetQ fy = pres.f.partial_y().eval_at(x, y);
  JetQ inv_fy = jet_reciprocal(fy);  // F_y(p) != 0 guaranteed by newton_branch

  std::vector<JetQ> xpow, ypow;
  for (int a = 0; a <= d - 3; ++a) xpow.push_back(jet_pow(x, a, order));
  for (int b = 0; b <= d - 3; ++b) ypow.push_back(jet_pow(y, b, order));

  std::vector<JetQ> frames;
  for (int a = 0; a <= d - 3; ++a)
    for (int b = 0; a + b <= d - 3; ++b)
      frames.push_back(jet_mul(jet_mul(xpow[a], ypow[b]), inv_fy));
  internal_check(static_cast<int>(frames.size()) == g,
                 "monomial count differs from genus");
  if (order >= 2 * g - 2) check_frame_independence(frames, false);
  return CurveModel(ModelKind::Plane, g, p, std::move(frames));
}

inline CurveModel build_hyper(const Hyperelliptic& pres, const RatPoint& p,
                              int order) {
  if (!pres.p.univariate_in_x())
    throw ConfigError("hyperelliptic data must be univariate in x");
  std::vector<Rat> coeffs = pres.p.x_coeffs();
  int deg = pres.p.deg_x();
  if (deg < 5)
    throw GenusTooSmall("hyperelliptic models need deg >= 5 (got " +
                        std::to_string(deg) + ")");
  if (!upoly_squarefree(coeffs))
    throw SingularPoint("right-hand side has a repeated root");
  int g = (deg - 1) / 2;

  if (p.y * p.y != pres.p.eval(p.x, Rat(0)))
    throw NotOnCurve("y^2 != p(x) at the base point");
  if (is_zero(p.y))
    throw BranchPointNotSupported(
        "base point is a ramification point of the x-projection");

  Poly2 f = Poly2::var_y() * Poly2::var_y() - pres.p;
  JetQ y = newton_branch(f, p.x, p.y, order);
  JetQ x = order >= 1 ? JetQ::variable(p.x, order) : JetQ::constant(p.x, 0);
  JetQ inv_y = jet_reciprocal(y);

  std::vector<JetQ> frames;
  JetQ xp = JetQ::constant(Rat(1), order);
  for (int i = 0; i < g; ++i) {
    frames.push_back(jet_mul(xp, inv_y));
    if (i + 1 < g) xp = jet_mul(xp, x);
  }
  if (order >= 2 * g - 2) check_frame_independence(frames, false);
  return CurveModel(ModelKind::Hyper, g, p, std::move(frames));
}

inline CurveModel build_local(const LocalData& pres, const RatPoint& p,
                              int order) {
  if (pres.genus < 2) throw GenusTooSmall("local models need genus >= 2");
  if (static_cast<int>(pres.frames.size()) != pres.genus)
    throw ConfigError("local model needs exactly genus frame jets");
  std::vector<JetQ> frames;
  for (const JetQ& f : pres.frames) {
    if (f.order() < order)
      throw InsufficientOrder("local frames have order " +
                              std::to_string(f.order()) + " but " +
                              std::to_string(order) + " is required");
    frames.push_back(jet_truncate(f, order));
  }
  check_frame_independence(frames, true);
  return CurveModel(ModelKind::Local, pres.genus, p, std::move(frames));
}

}  // namespace detail

inline CurveModel build_model(const CurvePresentation& pres, const RatPoint& p,
                              int order) {
  if (order < 0) throw OutOfRange("negative model order");
  if (std::holds_alternative<PlaneSmooth>(pres))
    return detail::build_plane(std::get<PlaneSmooth>(pres), p, order);
  if (std::holds_alternative<Hyperelliptic>(pres))
    return detail::build_hyper(std::get<Hyperelliptic>(pres), p, order);
  return detail::build_local(std::get<LocalData>(pres), p, order);
}

// ---------------------------------------------------------------------------
// Weight-m section spaces spanned by monomials in the frames.

struct SectionSpace {
  int weight = 0;
  int zero_test_order = 0;  // = weight * (2g-2)
  Subspace space;           // row space of the product jets, ambient order+1
  long dim = 0;
  long full_dim = 0;    // g for weight 1, (2m-1)(g-1) for weight m >= 2
  bool spans_full = false;
  bool exceeds_full = false;  // impossible for genuine curve data
};

namespace detail {

// All monomials of the given weight in the frames, truncated to max_order.
inline void monomial_products(const std::vector<JetQ>& frames, int weight,
                              int max_order, int from, const JetQ& partial,
                              std::vector<JetQ>& out) {
  if (weight == 0) {
    out.push_back(partial);
    return;
  }
  for (int i = from; i < static_cast<int>(frames.size()); ++i)
    monomial_products(frames, weight - 1, max_order, i,
                      jet_mul_trunc(partial, frames[i], max_order), out);
}

inline std::vector<JetQ> weight_products(const CurveModel& model, int weight,
                                         int max_order) {
  std::vector<JetQ> out;
  detail::monomial_products(model.frames(), weight, max_order, 0,
                            JetQ::constant(Rat(1), max_order), out);
  return out;
}

}  // namespace detail

inline SectionSpace section_space(const CurveModel& model, int weight) {
  if (weight < 1) throw OutOfRange("section weight must be >= 1");
  int g = model.genus();
  int t = weight * (2 * g - 2);
  if (model.order() < t)
    throw InsufficientOrder("weight-" + std::to_string(weight) +
                            " zero test needs order " + std::to_string(t) +
                            ", model has " + std::to_string(model.order()));
  std::vector<JetQ> prods = detail::weight_products(model, weight, t);
  RatMatrix rows(static_cast<int>(prods.size()), t + 1);
  for (int r = 0; r < rows.rows(); ++r)
    for (int k = 0; k <= t; ++k) rows.at(r, k) = prods[r].coeff(k);

  SectionSpace out;
  out.weight = weight;
  out.zero_test_order = t;
  out.space = Subspace::from_rows(t + 1, rows);
  out.dim = out.space.dim();
  out.full_dim = weight == 1 ? g : static_cast<long>(2 * weight - 1) * (g - 1);
  out.spans_full = out.dim == out.full_dim;
  out.exceeds_full = out.dim > out.full_dim;
  return out;
}

// ---------------------------------------------------------------------------
// Base-point genericity: osculating behaviour of the bicanonical products.
// At a general point the products that vanish to order >= n at p cut the
// expected 3g-3-n dimensional subspace for every n up to 3g-3.

struct CertRow {
  int n = 0;
  long defect = 0;    // dim of {s in the product span : ord_p(s) >= n}
  long expected = 0;  // 3g-3-n
  bool ok = false;
};

struct GenericityCertificate {
  int n_max = 0;
  std::vector<CertRow> rows;
  int certified_through = 0;  // largest n with all of 1..n passing
  bool all_ok = false;
  long bicanonical_dim = 0;

  bool covers(int n) const { return n <= certified_through; }
};

inline GenericityCertificate certify_general_point(const CurveModel& model,
                                                   int n_max) {
  int g = model.genus();
  if (n_max < 1 || n_max > 3 * g - 3)
    throw OutOfRange("certificate depth must lie in 1..3g-3");
  SectionSpace s2 = section_space(model, 2);
  long dim = s2.dim;

  GenericityCertificate cert;
  cert.n_max = n_max;
  cert.bicanonical_dim = dim;
  // rows of the coefficient matrix: z^k coefficients of the span basis
  RatMatrix coeffs(n_max, static_cast<int>(dim));
  for (int k = 0; k < n_max; ++k)
    for (int r = 0; r < dim; ++r) coeffs.at(k, r) = s2.space.basis().at(r, k);

  bool prefix_ok = true;
  for (int n = 1; n <= n_max; ++n) {
    RatMatrix head(n, static_cast<int>(dim));
    for (int k = 0; k < n; ++k)
      for (int r = 0; r < dim; ++r) head.at(k, r) = coeffs.at(k, r);
    CertRow row;
    row.n = n;
    row.defect = dim - rank(head);
    row.expected = 3 * g - 3 - n;
    row.ok = row.defect == row.expected;
    prefix_ok = prefix_ok && row.ok;
    if (prefix_ok) cert.certified_through = n;
    cert.rows.push_back(row);
  }
  cert.all_ok = cert.certified_through == n_max;
  return cert;
}

}  // namespace wahllab
