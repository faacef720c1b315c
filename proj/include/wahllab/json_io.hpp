#pragma once

// Curve files and report serialization.
//
// A curve file is a UTF-8 JSON object choosing one of three presentations:
//
//   {"presentation": "plane",         "polynomial": "x^5 + y^5 + 1",
//    "point": [[0, 1], [-1, 1]],      "order": 64}
//
//   {"presentation": "hyperelliptic", "polynomial": "x^9 + 1",
//    "point": [[0, 1], [1, 1]],       "order": 40}
//
//   {"presentation": "local", "genus": 4, "order": 140,
//    "point": [[0, 1], [0, 1]],
//    "jets": [["0", "1", "0", ...], ...]}   // genus rows, order+1 entries each
//
// "point" holds the two coordinates, each either a [numerator, denominator]
// pair, a plain integer, or a string such as "-3/4".  Jet coefficients use
// the same scalar forms.  The "order" field is the truncation order the
// file's data is meant for; commands that need longer jets raise it
// automatically for plane and hyperelliptic presentations, while local jets
// are finite data and are rejected instead when too short.
//
// Reports are emitted as ordered JSON.  Every scalar is an exact rational
// rendered as "num" or "num/den"; values proportional to the formal period
// unit carry an integer "two_pi_i_exponent" next to the rational part.  No
// report field is ever a floating-point number.

#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "wahllab/curve.hpp"
#include "wahllab/errors.hpp"
#include "wahllab/gauss.hpp"
#include "wahllab/jet.hpp"
#include "wahllab/matrix.hpp"
#include "wahllab/polynomial.hpp"
#include "wahllab/rational.hpp"
#include "wahllab/schiffer.hpp"

namespace wahllab {

using ordered_json = nlohmann::ordered_json;

// A parsed curve file: presentation data plus the declared base point and
// the truncation order the file vouches for.
struct CurveSpec {
  CurvePresentation presentation;
  RatPoint point;
  int order = 0;
  std::string presentation_name;  // "plane" | "hyperelliptic" | "local"
  std::string polynomial;         // source text; empty for local data
};

namespace detail {

inline Rat rat_from_json(const nlohmann::json& v, const char* what) {
  if (v.is_string()) return parse_rat(v.get<std::string>());
  if (v.is_number_integer()) return parse_rat(v.dump());
  if (v.is_array() && v.size() == 2 && v[0].is_number_integer() &&
      v[1].is_number_integer()) {
    Rat den = parse_rat(v[1].dump());
    if (is_zero(den))
      throw ParseError(std::string(what) + ": zero denominator");
    return parse_rat(v[0].dump()) / den;
  }
  throw ParseError(std::string(what) +
                   ": expected an integer, an \"a/b\" string, or a "
                   "[numerator, denominator] pair");
}

inline const nlohmann::json& require_field(const nlohmann::json& j,
                                           const char* key) {
  auto it = j.find(key);
  if (it == j.end())
    throw ParseError(std::string("curve file: missing field \"") + key + "\"");
  return *it;
}

}  // namespace detail

inline CurveSpec curve_spec_from_json(const nlohmann::json& j) {
  if (!j.is_object())
    throw ParseError("curve file: top level must be a JSON object");

  CurveSpec spec;
  const nlohmann::json& pres = detail::require_field(j, "presentation");
  if (!pres.is_string())
    throw ParseError("curve file: \"presentation\" must be a string");
  spec.presentation_name = pres.get<std::string>();

  const nlohmann::json& pt = detail::require_field(j, "point");
  if (!pt.is_array() || pt.size() != 2)
    throw ParseError("curve file: \"point\" must hold two coordinates");
  spec.point.x = detail::rat_from_json(pt[0], "point x");
  spec.point.y = detail::rat_from_json(pt[1], "point y");

  const nlohmann::json& ord = detail::require_field(j, "order");
  if (!ord.is_number_integer() || ord.get<long long>() < 0 ||
      ord.get<long long>() > 1000000)
    throw ParseError("curve file: \"order\" must be a small non-negative integer");
  spec.order = static_cast<int>(ord.get<long long>());

  if (spec.presentation_name == "plane" ||
      spec.presentation_name == "hyperelliptic") {
    const nlohmann::json& poly = detail::require_field(j, "polynomial");
    if (!poly.is_string())
      throw ParseError("curve file: \"polynomial\" must be a string");
    spec.polynomial = poly.get<std::string>();
    Poly2 f = Poly2::parse(spec.polynomial);
    if (spec.presentation_name == "plane")
      spec.presentation = PlaneSmooth{std::move(f)};
    else
      spec.presentation = Hyperelliptic{std::move(f)};
    return spec;
  }

  if (spec.presentation_name == "local") {
    const nlohmann::json& gj = detail::require_field(j, "genus");
    if (!gj.is_number_integer() || gj.get<long long>() < 2 ||
        gj.get<long long>() > 10000)
      throw ParseError("curve file: local data needs an integer genus >= 2");
    int genus = static_cast<int>(gj.get<long long>());

    const nlohmann::json& jets = detail::require_field(j, "jets");
    if (!jets.is_array() || static_cast<int>(jets.size()) != genus)
      throw ParseError("curve file: \"jets\" must hold exactly genus rows");
    LocalData data;
    data.genus = genus;
    size_t width = 0;
    for (const nlohmann::json& row : jets) {
      if (!row.is_array() || row.empty())
        throw ParseError("curve file: each jet row must be a non-empty array");
      if (width == 0) width = row.size();
      if (row.size() != width)
        throw ParseError("curve file: jet rows must all have the same length");
      std::vector<Rat> coeffs;
      coeffs.reserve(row.size());
      for (const nlohmann::json& c : row)
        coeffs.push_back(detail::rat_from_json(c, "jet coefficient"));
      data.frames.push_back(JetQ(std::move(coeffs)));
    }
    spec.presentation = std::move(data);
    return spec;
  }

  throw ParseError("curve file: unknown presentation \"" +
                   spec.presentation_name + "\"");
}

inline CurveSpec load_curve_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open curve file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("curve file " + path + ": " + e.what());
  }
  return curve_spec_from_json(j);
}

// ---------------------------------------------------------------------------
// Report serializers.  Field order is fixed so that identical inputs produce
// byte-identical documents.

inline ordered_json point_json(const RatPoint& p) {
  return ordered_json{{"x", rat_str(p.x)}, {"y", rat_str(p.y)}};
}

inline ordered_json unit_value_json(const TwoPiI& v) {
  return ordered_json{{"rational", rat_str(v.rational_part)},
                      {"two_pi_i_exponent", v.is_zero() ? 0 : v.unit},
                      {"display", to_string(v)}};
}

inline ordered_json matrix_json(const RatMatrix& m) {
  ordered_json rows = ordered_json::array();
  for (int r = 0; r < m.rows(); ++r) {
    ordered_json row = ordered_json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(rat_str(m.at(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline ordered_json certificate_json(const GenericityCertificate& cert) {
  ordered_json rows = ordered_json::array();
  for (const CertRow& r : cert.rows)
    rows.push_back(ordered_json{{"n", r.n},
                                {"expected_defect", r.expected},
                                {"defect", r.defect},
                                {"ok", r.ok}});
  return ordered_json{{"bicanonical_dim", cert.bicanonical_dim},
                      {"certified_through", cert.certified_through},
                      {"all_ok", cert.all_ok},
                      {"rows", std::move(rows)}};
}

inline ordered_json filtration_json(const Filtration& filt) {
  ordered_json chain = ordered_json::array();
  for (const FiltrationLevel& lv : filt.levels)
    chain.push_back(ordered_json{{"level", lv.level},
                                 {"dim", lv.kernel.dim()},
                                 {"strict_drop", lv.strict_drop}});
  return ordered_json{{"genus", filt.genus},
                      {"max_level", filt.max_level},
                      {"depth_level", filt.depth_level},
                      {"first_zero_level", filt.first_zero_level},
                      {"chain", std::move(chain)}};
}

inline ordered_json rank_report_json(const RankReport& report) {
  ordered_json rows = ordered_json::array();
  for (const RankRow& r : report.rows)
    rows.push_back(ordered_json{{"l", r.l},
                                {"level", r.level},
                                {"kernel_dim_below", r.kernel_dim_below},
                                {"rank_at_level", r.rank_at_level},
                                {"bound", r.bound},
                                {"kernel_ok", r.kernel_ok},
                                {"rank_ok", r.rank_ok},
                                {"informative", r.informative}});
  return ordered_json{{"genus", report.genus},
                      {"all_pass", report.all_pass},
                      {"top_kernel_dim", report.top_kernel_dim},
                      {"max_informative_l", report.max_informative_l},
                      {"rows", std::move(rows)}};
}

inline ordered_json band_json(const RhoBand& band) {
  ordered_json j{{"genus", band.genus},
                 {"level", band.level},
                 {"size", band.size},
                 {"base_point", point_json(band.base)},
                 {"mu_at_base", rat_str(band.mu_at_p)},
                 {"accidental_zero_at_base", band.accidental_zero_at_p},
                 {"certificate_required", band.certificate_required}};
  if (band.certificate) j["certificate"] = certificate_json(*band.certificate);
  ordered_json rows = ordered_json::array();
  for (int n = 1; n <= band.size; ++n) {
    ordered_json row = ordered_json::array();
    for (int l = 1; l <= band.size; ++l) {
      BandTag tag = band.tag(n, l);
      ordered_json cell{{"tag", band_tag_name(tag)}};
      if (tag != BandTag::Unknown) cell["value"] = unit_value_json(band.value(n, l));
      row.push_back(std::move(cell));
    }
    rows.push_back(std::move(row));
  }
  j["matrix"] = std::move(rows);
  return j;
}

inline ordered_json geodesic_json(const GeodesicReport& report) {
  ordered_json links = ordered_json::array();
  for (bool s : report.link_strict) links.push_back(s);
  return ordered_json{{"genus", report.genus},
                      {"n_strict", report.n_strict},
                      {"bound", report.bound},
                      {"vacuous", report.vacuous},
                      {"no_germs", report.no_germs},
                      {"chain_complete", report.chain_complete},
                      {"link_strict", std::move(links)},
                      {"statement", report.statement}};
}

inline ordered_json flag_json(const OsculatingFlag& flag) {
  return ordered_json{{"n", flag.n},
                      {"section_dim", flag.section_dim},
                      {"flag_rows", matrix_json(flag.flag_rows)},
                      {"annihilator_dim", flag.annihilator.dim()},
                      {"annihilator_basis", matrix_json(flag.annihilator.basis())},
                      {"certificate", certificate_json(flag.certificate)}};
}

inline ordered_json modular_json(const std::vector<ModularChain>& chains) {
  ordered_json arr = ordered_json::array();
  for (const ModularChain& c : chains) {
    ordered_json dims = ordered_json::array();
    for (long d : c.dims) dims.push_back(d);
    arr.push_back(ordered_json{{"prime", c.prime}, {"dims", std::move(dims)}});
  }
  return arr;
}

// ---------------------------------------------------------------------------
// Flat-table renderers.  CSV covers exactly the two tabular reports; the text
// forms are one-line-per-row summaries of the same data.

inline std::string filtration_csv(const Filtration& filt) {
  std::string out = "level,dim,strict_drop\n";
  for (const FiltrationLevel& lv : filt.levels) {
    out += std::to_string(lv.level);
    out += ',';
    out += std::to_string(lv.kernel.dim());
    out += ',';
    out += lv.strict_drop ? "true" : "false";
    out += '\n';
  }
  return out;
}

inline std::string rank_csv(const RankReport& report) {
  std::string out =
      "l,level,kernel_dim_below,rank_at_level,bound,kernel_ok,rank_ok,"
      "informative\n";
  for (const RankRow& r : report.rows) {
    out += std::to_string(r.l);
    out += ',';
    out += std::to_string(r.level);
    out += ',';
    out += std::to_string(r.kernel_dim_below);
    out += ',';
    out += std::to_string(r.rank_at_level);
    out += ',';
    out += std::to_string(r.bound);
    out += ',';
    out += r.kernel_ok ? "true" : "false";
    out += ',';
    out += r.rank_ok ? "true" : "false";
    out += ',';
    out += r.informative ? "true" : "false";
    out += '\n';
  }
  return out;
}

inline std::string filtration_text(const Filtration& filt) {
  std::string out = "kernel filtration (genus " + std::to_string(filt.genus) +
                    ", levels 0.." + std::to_string(filt.max_level) + ")\n";
  for (const FiltrationLevel& lv : filt.levels) {
    out += "  level " + std::to_string(lv.level) + ": dim " +
           std::to_string(lv.kernel.dim());
    if (lv.strict_drop) out += "  (strict drop)";
    out += '\n';
  }
  return out;
}

inline std::string certificate_text(const GenericityCertificate& cert) {
  std::string out =
      "base-point certificate (weight-2 span dim " +
      std::to_string(cert.bicanonical_dim) + ", certified through depth " +
      std::to_string(cert.certified_through) + ")\n";
  for (const CertRow& r : cert.rows) {
    out += "  depth " + std::to_string(r.n) + ": defect " +
           std::to_string(r.defect) + " (expected " +
           std::to_string(r.expected) + ") " + (r.ok ? "ok" : "SPECIAL") + '\n';
  }
  return out;
}

inline std::string rank_text(const RankReport& report) {
  std::string out = "kernel dimension bounds (genus " +
                    std::to_string(report.genus) + ")\n";
  for (const RankRow& r : report.rows) {
    out += "  l=" + std::to_string(r.l) + " level " +
           std::to_string(r.level) + ": kernel below " +
           std::to_string(r.kernel_dim_below) + " <= " +
           std::to_string(r.bound) + (r.kernel_ok ? " ok" : " VIOLATED");
    if (!r.informative) out += " (bound not informative)";
    out += '\n';
  }
  out += report.all_pass ? "  all bounds hold\n" : "  BOUND VIOLATION\n";
  return out;
}

inline std::string band_text(const RhoBand& band) {
  std::string out = "pairing band for a level-" + std::to_string(band.level) +
                    " quadric (Z zero / B band / ? unknown)\n";
  for (int n = 1; n <= band.size; ++n) {
    out += "  ";
    for (int l = 1; l <= band.size; ++l) {
      BandTag tag = band.tag(n, l);
      out += tag == BandTag::Zero ? 'Z' : tag == BandTag::Band ? 'B' : '?';
    }
    out += '\n';
  }
  out += "band values (row, column): ";
  bool first = true;
  for (int n = 1; n <= band.size; ++n) {
    int l = band.level + 2 - n;
    if (l < 1 || l > band.size) continue;
    if (!first) out += ", ";
    first = false;
    out += "(" + std::to_string(n) + "," + std::to_string(l) + ") = " +
           to_string(band.value(n, l));
  }
  out += '\n';
  return out;
}

}  // namespace wahllab
