#pragma once

// Point-supported deformation pairings and the band structure they expose.
//
// The k-th variation at the base point pairs with a quadratic differential
// beta = f(z) dz^2 through the single Taylor coefficient
//
//     <beta, xi^k> = 2*pi*i * coeff_{k-1}(f),
//
// so everything in this header is exact rational arithmetic times one formal
// transcendental unit.  For a quadric Q of exact kernel level m the pairing
// rho(Q)(xi^n)(xi^l) is computable on a band:
//
//     n + l <= m+1   ->  0                        (the kernel identities)
//     n + l  = m+2   ->  c_{n,m} * mu_{m+2}(Q)(p) (universal constants)
//     n + l  > m+2   ->  not locally determined    (reported as Unknown)
//
// with c_{n,m} = 2*pi*i * (-1)^{n-1} * prod_{j=0}^{n-2}(m-j) / ((n-1)!(m+2)!).
//
// Validity of the k-th variation: unconditional for k < 2g-2, and for
// 2g-2 <= k <= 3g-3 exactly at points the osculating certificate covers.
// Operations that consume variations in the certified range demand the
// certificate; operations confined to k < 2g-2 do not.

#include <optional>
#include <string>
#include <vector>

#include "wahllab/curve.hpp"
#include "wahllab/gauss.hpp"

namespace wahllab {

// --- the formal unit ---------------------------------------------------------

// An exact rational times (2*pi*i)^unit.  The unit is never evaluated; zero
// compares equal to zero regardless of the exponent.
struct TwoPiI {
  Rat rational_part;
  int unit = 1;  // 0 or 1

  bool is_zero() const { return wahllab::is_zero(rational_part); }

  friend bool operator==(const TwoPiI& a, const TwoPiI& b) {
    if (a.is_zero() && b.is_zero()) return true;
    return a.rational_part == b.rational_part && a.unit == b.unit;
  }
  friend bool operator!=(const TwoPiI& a, const TwoPiI& b) { return !(a == b); }

  friend TwoPiI operator*(const Rat& s, const TwoPiI& v) {
    return TwoPiI{s * v.rational_part, v.unit};
  }
};

inline TwoPiI two_pi_i(const Rat& q) { return TwoPiI{q, 1}; }

inline std::string to_string(const TwoPiI& v) {
  if (v.is_zero()) return "0";
  if (v.unit == 0) return rat_str(v.rational_part);
  return rat_str(v.rational_part) + "·2πi";
}

// --- the pairing -------------------------------------------------------------

// <beta, xi^k> for beta = f(z) dz^2 given as the jet of f.
inline TwoPiI schiffer_pairing(const JetQ& beta, int k) {
  if (k < 1) throw OutOfRange("variation index must be >= 1");
  if (beta.order() < k - 1)
    throw OrderExhausted("pairing with index " + std::to_string(k) +
                         " needs jet order " + std::to_string(k - 1));
  return two_pi_i(beta.coeff(k - 1));
}

// --- universal band constants --------------------------------------------------

// c_{n,m} by the closed form, asserted against the defining alternating sum
//   2*pi*i * sum_{k=0}^{n-1} (-1)^k (n-k) / (k! (m+2-k)!).
inline TwoPiI c_constant(int n, int m) {
  if (m < 0 || m % 2 != 0) throw OutOfRange("band level must be even and >= 0");
  if (n < 1 || n > m + 1)
    throw OutOfRange("constant index must lie in 1..m+1");

  Int prod = 1;
  for (int j = 0; j <= n - 2; ++j) prod *= (m - j);
  Rat closed = make_rat(prod, factorial(n - 1) * factorial(m + 2));
  if (n % 2 == 0) closed = -closed;

  Rat sum(0);
  for (int k = 0; k <= n - 1; ++k) {
    Rat term = make_rat(Int(n - k), factorial(k) * factorial(m + 2 - k));
    sum += k % 2 == 0 ? term : -term;
  }
  internal_check(closed == sum, "band constant: closed form differs from sum");
  return two_pi_i(closed);
}

// sum_{k=0}^{t} (-1)^k / (k!(l-k)!)  ==  (-1)^t prod_{k=1}^{t}(l-k) / (l! t!)
inline bool teschio_identity_check(int t, int l) {
  if (t < 0) throw OutOfRange("alternating length must be >= 0");
  if (l < t + 1) throw OutOfRange("identity requires l >= t+1");
  Rat lhs(0);
  for (int k = 0; k <= t; ++k) {
    Rat term = make_rat(Int(1), factorial(k) * factorial(l - k));
    lhs += k % 2 == 0 ? term : -term;
  }
  Int prod = 1;
  for (int k = 1; k <= t; ++k) prod *= (l - k);
  Rat rhs = make_rat(prod, factorial(l) * factorial(t));
  if (t % 2 != 0) rhs = -rhs;
  return lhs == rhs;
}

// --- osculating flag of the weight-2 embedding ----------------------------------

// The order-n coefficient flag of the weight-2 section space at the base
// point: flag_rows holds the first n Taylor-coefficient functionals on the
// span basis, and the annihilator is {sigma : ord_p(sigma) >= n}, which the
// pairing above identifies with the annihilator of the first n variations.
struct OsculatingFlag {
  int n = 0;
  long section_dim = 0;        // dim of the weight-2 span (3g-3 when it is full)
  RatMatrix flag_rows;         // n x section_dim; row k = coeff_k functionals
  Subspace annihilator;        // dim section_dim - n at a certified point
  GenericityCertificate certificate;
};

inline OsculatingFlag osculating_flag(const CurveModel& model, int n) {
  GenericityCertificate cert = certify_general_point(model, n);
  if (!cert.all_ok)
    throw UncertifiedPoint(
        "the base point fails the osculating certificate at depth " +
        std::to_string(cert.certified_through + 1));

  SectionSpace s2 = section_space(model, 2);
  int dim = static_cast<int>(s2.dim);
  OsculatingFlag flag;
  flag.n = n;
  flag.section_dim = s2.dim;
  flag.flag_rows = RatMatrix(n, dim);
  for (int k = 0; k < n; ++k)
    for (int r = 0; r < dim; ++r)
      flag.flag_rows.at(k, r) = s2.space.basis().at(r, k);
  flag.annihilator = kernel(flag.flag_rows);
  flag.certificate = std::move(cert);
  internal_check(flag.annihilator.dim() == flag.section_dim - n,
                 "annihilator dimension differs from the certified defect");
  return flag;
}

// --- the band matrix -------------------------------------------------------------

enum class BandTag { Zero, Band, Unknown };

inline const char* band_tag_name(BandTag t) {
  switch (t) {
    case BandTag::Zero: return "zero";
    case BandTag::Band: return "band";
    default: return "unknown";
  }
}

// rho(Q) against the variation basis at the base point, for Q of exact level
// m read off the filtration.  Entries are pure functions of (n, l, m) and the
// single number mu_{m+2}(Q)(p); tags and values are exposed by accessors.
struct RhoBand {
  int genus = 0;
  int level = 0;  // m: the exact kernel level of Q
  int size = 0;   // 3g-3
  RatPoint base;
  Rat mu_at_p;                    // mu_{m+2}(Q) at the base point
  bool accidental_zero_at_p = false;  // section nonzero, value at p zero
  bool certificate_required = false;
  std::optional<GenericityCertificate> certificate;

  BandTag tag(int n, int l) const {
    if (n < 1 || l < 1 || n > size || l > size)
      throw OutOfRange("band indices must lie in 1..3g-3");
    if (n + l <= level + 1) return BandTag::Zero;
    if (n + l == level + 2) return BandTag::Band;
    return BandTag::Unknown;
  }

  TwoPiI value(int n, int l) const {
    BandTag t = tag(n, l);
    if (t == BandTag::Zero) return TwoPiI{Rat(0), 1};
    if (t == BandTag::Unknown)
      throw OutOfRange("entry (" + std::to_string(n) + "," + std::to_string(l) +
                       ") is not locally determined");
    return mu_at_p * c_constant(n, level);
  }
};

inline RhoBand rho_band(const CurveModel& model, const Quadric& q,
                        const Filtration& filt) {
  int g = model.genus();
  if (filt.genus != g || q.genus() != g)
    throw OutOfRange("model, quadric and filtration genera differ");

  int level = quadric_level(filt, q);  // LevelUndetermined for Q = 0
  if (level == -2)
    throw NotInKernel("the quadric does not vanish on the canonical image");
  if (level == filt.max_level)
    throw LevelUndetermined(
        "the quadric lies in the deepest computed kernel (level " +
        std::to_string(level) + "); extend the filtration to pin its level");

  RhoBand band;
  band.genus = g;
  band.level = level;
  band.size = 3 * g - 3;
  band.base = model.base();

  // variations with index >= 2g-2 are only valid at certified points; the
  // determined region uses indices up to min(level+1, 3g-3)
  int deepest_index = std::min(level + 1, 3 * g - 3);
  band.certificate_required = deepest_index >= 2 * g - 2;
  if (band.certificate_required) {
    GenericityCertificate cert = certify_general_point(model, deepest_index);
    if (!cert.all_ok)
      throw UncertifiedPoint(
          "band entries reach variation index " + std::to_string(deepest_index) +
          " but the base point is only certified through " +
          std::to_string(cert.certified_through));
    band.certificate = std::move(cert);
  }

  JetQ image = mu_series(model, q, level + 2);
  internal_check(!image.is_zero(), "level pinned but the next image vanishes");
  band.mu_at_p = image.coeff(0);
  band.accidental_zero_at_p = is_zero(band.mu_at_p);
  return band;
}

// --- dimension bound from the strict part of the chain ----------------------------

struct GeodesicReport {
  int genus = 0;
  int n_strict = 0;              // consecutive strict links from level 0->2
  long bound = 0;                // 3g-3 - n_strict
  bool vacuous = false;          // n_strict == 0
  bool no_germs = false;         // n_strict == 3g-3: bound 0
  bool chain_complete = false;   // filtration reaches level 6g-6
  std::vector<bool> link_strict; // link i: kernel at 2(i+1) vs at 2i
  std::string statement;
};

inline GeodesicReport geodesic_bound_report(const Filtration& filt, int g) {
  if (filt.genus != g) throw OutOfRange("genus differs from the filtration's");
  GeodesicReport rep;
  rep.genus = g;
  rep.chain_complete = filt.max_level == 6 * g - 6;

  int links = filt.max_level / 2;
  bool running = true;
  for (int i = 1; i <= links; ++i) {
    bool strict = filt.dim_at(2 * i) < filt.dim_at(2 * i - 2);
    rep.link_strict.push_back(strict);
    if (running && strict) rep.n_strict = i;
    running = running && strict;
  }
  // a chain that is still strict at its computed end may keep dropping
  if (running && !rep.chain_complete && rep.n_strict < 3 * g - 3 &&
      filt.dim_at(filt.max_level) > 0)
    throw IncompleteFiltration(
        "every computed link is strict and the chain has not ended; extend "
        "the filtration beyond level " + std::to_string(filt.max_level));

  rep.bound = 3 * g - 3 - rep.n_strict;
  rep.vacuous = rep.n_strict == 0;
  rep.no_germs = rep.n_strict == 3 * g - 3;
  if (rep.no_germs) {
    rep.statement =
        "all 3g-3 links are strict: no germ of a totally geodesic submanifold "
        "passes through this point of the moduli space";
  } else if (rep.vacuous) {
    rep.statement =
        "the first link is an equality: the dimension bound 3g-3 carries no "
        "information at this curve";
  } else {
    const std::string head =
        rep.n_strict == 1 ? "the first link is strict"
                          : "the first " + std::to_string(rep.n_strict) +
                                " links are strict";
    rep.statement =
        head + ": a germ of a totally geodesic submanifold through this "
        "curve has dimension at most " + std::to_string(rep.bound);
  }
  return rep;
}

}  // namespace wahllab
