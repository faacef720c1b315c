#pragma once

// Command-line orchestration: resolve a run configuration against a curve
// file, execute one command, and render the result in the requested format.
//
// Commands
//   filtration     even kernel filtration of the quadric space, with an
//                  optional modular cross-check of the dimension chain
//   rho-band       pairing band of a canonical kernel quadric (the first
//                  reduced basis member at the deepest nonzero level)
//   certify-point  base-point genericity certificate; refuses hyperelliptic
//                  input, which the certified statements exclude
//   constants      the band constant table for one even level (--m)
//   osculating     osculating flag of the weight-2 embedding at depth --n
//   report         everything above in one document, over the full chain
//
// Exit codes are the ErrorKind values: 0 success, 2 configuration, 3 curve
// or point, 4 truncation order, 5 internal invariant violation.
//
// The effective truncation order is the largest of the curve file's "order"
// field and the minimum the command needs; an explicit --order below that
// minimum is rejected rather than silently raised, with the required value
// in the message.

#include <chrono>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "wahllab/curve.hpp"
#include "wahllab/errors.hpp"
#include "wahllab/gauss.hpp"
#include "wahllab/json_io.hpp"
#include "wahllab/rational.hpp"
#include "wahllab/schiffer.hpp"

namespace wahllab {

enum class OutputFormat { Json, Csv, Text };

struct RunConfig {
  std::string command;  // filtration | rho-band | certify-point | constants |
                        // osculating | report
  std::string curve_path;
  std::optional<RatPoint> point_override;
  std::optional<int> order_override;
  std::optional<int> max_level;   // filtration ceiling; default 6g-6
  std::optional<int> flag_depth;  // osculating --n; default: deepest certified
  std::optional<int> constants_m; // constants --m
  bool exact_only = false;
  OutputFormat format = OutputFormat::Json;
  std::string out_path;  // empty: write to the stream passed to run()
};

namespace detail {

inline int genus_of(const CurvePresentation& pres) {
  if (std::holds_alternative<PlaneSmooth>(pres)) {
    int d = std::get<PlaneSmooth>(pres).f.total_degree();
    if (d < 5)
      throw GenusTooSmall("plane models need degree >= 5 (got " +
                          std::to_string(d) + ")");
    return (d - 1) * (d - 2) / 2;
  }
  if (std::holds_alternative<Hyperelliptic>(pres)) {
    int deg = std::get<Hyperelliptic>(pres).p.deg_x();
    if (deg < 5)
      throw GenusTooSmall("hyperelliptic models need deg >= 5 (got " +
                          std::to_string(deg) + ")");
    return (deg - 1) / 2;
  }
  return std::get<LocalData>(pres).genus;
}

struct ResolvedRun {
  CurveSpec spec;
  int genus = 0;
  int max_level = 0;
  int order = 0;
};

inline ResolvedRun resolve(const RunConfig& cfg) {
  if (cfg.curve_path.empty())
    throw ConfigError("command \"" + cfg.command + "\" needs --curve");
  ResolvedRun r;
  r.spec = load_curve_spec(cfg.curve_path);
  if (cfg.point_override) r.spec.point = *cfg.point_override;
  r.genus = genus_of(r.spec.presentation);

  int full = 6 * r.genus - 6;
  r.max_level = cfg.max_level.value_or(full);
  if (r.max_level < 0 || r.max_level % 2 != 0 || r.max_level > full)
    throw ConfigError("--max-level must be even and between 0 and " +
                      std::to_string(full));
  if (cfg.command == "report" && r.max_level != full)
    throw ConfigError("report needs the full filtration; omit --max-level or "
                      "set it to " + std::to_string(full));

  int required;
  if (cfg.command == "certify-point" || cfg.command == "osculating")
    required = 2 * (2 * r.genus - 2);
  else
    required = mu_required_order(r.genus, r.max_level);

  if (cfg.order_override) {
    if (*cfg.order_override < required)
      throw InsufficientOrder(
          "command \"" + cfg.command + "\" needs order >= " +
          std::to_string(required) + " here (got " +
          std::to_string(*cfg.order_override) + ")");
    r.order = *cfg.order_override;
  } else {
    r.order = std::max(r.spec.order, required);
  }
  return r;
}

inline ordered_json input_echo(const RunConfig& cfg, const ResolvedRun& r) {
  ordered_json j{{"curve_file", cfg.curve_path},
                 {"presentation", r.spec.presentation_name}};
  if (!r.spec.polynomial.empty()) j["polynomial"] = r.spec.polynomial;
  j["genus"] = r.genus;
  j["point"] = point_json(r.spec.point);
  j["order"] = r.order;
  // Schiffer-basis quantities depend on the local coordinate; every report
  // pins the choice so downstream readers can interpret the values.
  j["coordinate"] = "z = x - x(p)";
  return j;
}

// The band subject: the first reduced-basis member of the deepest nonzero
// kernel.  The chain is nested, so when the level below is zero this member
// sits at exactly the deepest level.
inline std::optional<Quadric> canonical_kernel_quadric(const Filtration& filt) {
  if (filt.depth_level < 0) return std::nullopt;
  const Subspace& kernel = filt.at_level(filt.depth_level);
  return quadric_from_coords(kernel.basis().row(0), filt.genus);
}

struct Rendered {
  ordered_json json;
  std::string flat;  // csv or text when requested; empty for json
};

inline Rendered run_filtration(const RunConfig& cfg, const ResolvedRun& r) {
  CurveModel model = build_model(r.spec.presentation, r.spec.point, r.order);
  Filtration filt = kernel_filtration(model, r.max_level);
  Rendered out;
  out.json = ordered_json{{"tool", "wahllab"},
                          {"command", "filtration"},
                          {"input", input_echo(cfg, r)},
                          {"arithmetic", cfg.exact_only
                                             ? "exact"
                                             : "exact with modular advisory"},
                          {"filtration", filtration_json(filt)}};
  if (!cfg.exact_only)
    out.json["modular_advisory"] =
        modular_json(filtration_dims_modular(model, r.max_level));
  if (cfg.format == OutputFormat::Csv) out.flat = filtration_csv(filt);
  if (cfg.format == OutputFormat::Text) out.flat = filtration_text(filt);
  return out;
}

inline Rendered run_certify(const RunConfig& cfg, const ResolvedRun& r) {
  CurveModel model = build_model(r.spec.presentation, r.spec.point, r.order);
  if (model.hyperelliptic())
    throw HyperellipticExcluded("hyperelliptic model refused for theorem checks");
  GenericityCertificate cert = certify_general_point(model, 3 * r.genus - 3);
  Rendered out;
  out.json = ordered_json{{"tool", "wahllab"},
                          {"command", "certify-point"},
                          {"input", input_echo(cfg, r)},
                          {"arithmetic", "exact"},
                          {"certificate", certificate_json(cert)}};
  if (cfg.format == OutputFormat::Text) out.flat = certificate_text(cert);
  return out;
}

inline Rendered run_constants(const RunConfig& cfg) {
  if (!cfg.constants_m)
    throw ConfigError("constants needs --m (an even level >= 0)");
  int m = *cfg.constants_m;
  ordered_json entries = ordered_json::array();
  for (int n = 1; n <= m + 1; ++n) {
    TwoPiI c = c_constant(n, m);  // validates m itself on the first call
    entries.push_back(ordered_json{{"n", n},
                                   {"rational", rat_str(c.rational_part)},
                                   {"two_pi_i_exponent", c.unit},
                                   {"display", to_string(c)}});
  }
  Rendered out;
  out.json = ordered_json{{"tool", "wahllab"},
                          {"command", "constants"},
                          {"m", m},
                          {"entries", std::move(entries)}};
  if (cfg.format == OutputFormat::Text) {
    std::string text = "band constants at level " + std::to_string(m) + "\n";
    for (int n = 1; n <= m + 1; ++n)
      text += "  c(" + std::to_string(n) + "," + std::to_string(m) + ") = " +
              to_string(c_constant(n, m)) + '\n';
    out.flat = std::move(text);
  }
  return out;
}

inline Rendered run_osculating(const RunConfig& cfg, const ResolvedRun& r) {
  CurveModel model = build_model(r.spec.presentation, r.spec.point, r.order);
  int n;
  if (cfg.flag_depth) {
    n = *cfg.flag_depth;
  } else {
    GenericityCertificate cert =
        certify_general_point(model, 3 * r.genus - 3);
    n = std::max(1, cert.certified_through);
  }
  OsculatingFlag flag = osculating_flag(model, n);
  Rendered out;
  out.json = ordered_json{{"tool", "wahllab"},
                          {"command", "osculating"},
                          {"input", input_echo(cfg, r)},
                          {"arithmetic", "exact"},
                          {"flag", flag_json(flag)}};
  if (cfg.format == OutputFormat::Text)
    out.flat = "osculating flag at depth " + std::to_string(flag.n) +
               ": section dim " + std::to_string(flag.section_dim) +
               ", annihilator dim " + std::to_string(flag.annihilator.dim()) +
               "\n" + certificate_text(flag.certificate);
  return out;
}

inline Rendered run_rho_band(const RunConfig& cfg, const ResolvedRun& r) {
  CurveModel model = build_model(r.spec.presentation, r.spec.point, r.order);
  Filtration filt = kernel_filtration(model, r.max_level);
  Rendered out;
  out.json = ordered_json{{"tool", "wahllab"},
                          {"command", "rho-band"},
                          {"input", input_echo(cfg, r)},
                          {"arithmetic", "exact"},
                          {"filtration", filtration_json(filt)}};
  std::optional<Quadric> q = canonical_kernel_quadric(filt);
  if (!q) {
    out.json["band"] = ordered_json{
        {"available", false},
        {"reason", "the quadric space is trivial; nothing to probe"}};
    if (cfg.format == OutputFormat::Text)
      out.flat = "no kernel quadric available: the quadric space is trivial\n";
    return out;
  }
  ordered_json coords = ordered_json::array();
  for (const Rat& c : coords_of(*q)) coords.push_back(rat_str(c));
  out.json["quadric"] = ordered_json{
      {"kernel_level", filt.depth_level}, {"coords", std::move(coords)}};
  RhoBand band = rho_band(model, *q, filt);
  out.json["band"] = band_json(band);
  if (cfg.format == OutputFormat::Text) out.flat = band_text(band);
  return out;
}

inline Rendered run_report(const RunConfig& cfg, const ResolvedRun& r) {
  CurveModel model = build_model(r.spec.presentation, r.spec.point, r.order);
  GenericityCertificate cert =
      certify_general_point(model, 3 * r.genus - 3);
  Filtration filt = kernel_filtration(model, r.max_level);
  RankReport ranks = rank_report(filt, r.genus);
  GeodesicReport geo = geodesic_bound_report(filt, r.genus);

  Rendered out;
  out.json = ordered_json{{"tool", "wahllab"},
                          {"command", "report"},
                          {"input", input_echo(cfg, r)},
                          {"arithmetic", cfg.exact_only
                                             ? "exact"
                                             : "exact with modular advisory"},
                          {"certificate", certificate_json(cert)},
                          {"filtration", filtration_json(filt)},
                          {"rank_table", rank_report_json(ranks)},
                          {"geodesic_bound", geodesic_json(geo)}};

  // The band is a best-effort section: a quadric whose level the chain does
  // not pin, or a base point the band's depth cannot certify, downgrades it
  // to an explanation instead of failing the whole report.
  std::optional<Quadric> q = canonical_kernel_quadric(filt);
  if (!q) {
    out.json["band"] = ordered_json{
        {"available", false},
        {"reason", "the quadric space is trivial; nothing to probe"}};
  } else {
    ordered_json coords = ordered_json::array();
    for (const Rat& c : coords_of(*q)) coords.push_back(rat_str(c));
    out.json["quadric"] = ordered_json{
        {"kernel_level", filt.depth_level}, {"coords", std::move(coords)}};
    try {
      RhoBand band = rho_band(model, *q, filt);
      out.json["band"] = band_json(band);
    } catch (const Error& e) {
      out.json["band"] =
          ordered_json{{"available", false}, {"reason", e.what()}};
    }
  }
  if (!cfg.exact_only)
    out.json["modular_advisory"] =
        modular_json(filtration_dims_modular(model, r.max_level));

  if (cfg.format == OutputFormat::Csv)
    out.flat = filtration_csv(filt) + "\n" + rank_csv(ranks);
  if (cfg.format == OutputFormat::Text) {
    out.flat = certificate_text(cert) + filtration_text(filt) +
               rank_text(ranks) + geo.statement + "\n";
  }
  return out;
}

inline Rendered execute(const RunConfig& cfg) {
  if (cfg.command == "constants") return run_constants(cfg);
  if (cfg.format == OutputFormat::Csv && cfg.command != "filtration" &&
      cfg.command != "report")
    throw ConfigError(
        "csv covers the filtration chain and the rank table only; use json "
        "or text for \"" + cfg.command + "\"");
  ResolvedRun r = resolve(cfg);
  if (cfg.command == "filtration") return run_filtration(cfg, r);
  if (cfg.command == "rho-band") return run_rho_band(cfg, r);
  if (cfg.command == "certify-point") return run_certify(cfg, r);
  if (cfg.command == "osculating") return run_osculating(cfg, r);
  if (cfg.command == "report") return run_report(cfg, r);
  throw ConfigError("unknown command \"" + cfg.command + "\"");
}

}  // namespace detail

inline int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  using clock = std::chrono::steady_clock;
  try {
    clock::time_point start = clock::now();
    detail::Rendered rendered = detail::execute(cfg);
    std::string text;
    if (cfg.format == OutputFormat::Json) {
      rendered.json["timing_ms"] = static_cast<long long>(
          std::chrono::duration_cast<std::chrono::milliseconds>(clock::now() -
                                                                start)
              .count());
      text = rendered.json.dump(2) + "\n";
    } else {
      text = std::move(rendered.flat);
    }
    if (!cfg.out_path.empty()) {
      std::ofstream file(cfg.out_path);
      if (!file) throw ConfigError("cannot write output file: " + cfg.out_path);
      file << text;
    } else {
      out << text;
    }
    return 0;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return static_cast<int>(e.kind());
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return static_cast<int>(ErrorKind::Internal);
  }
}

}  // namespace wahllab
