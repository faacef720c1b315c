// Command-line driver; argument parsing only, all work happens in run().

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wahllab/cli.hpp"
#include "wahllab/rational.hpp"

namespace {

struct ParsedFlags {
  std::vector<std::string> point;  // two rationals: x y
  std::string format = "json";
  int order = -1;
  int max_level = -1;
  int flag_depth = -1;
  int constants_m = -1;
};

void add_common_flags(CLI::App* cmd, wahllab::RunConfig* cfg,
                      ParsedFlags* flags, bool wants_curve) {
  if (wants_curve) {
    cmd->add_option("--curve", cfg->curve_path,
                    "curve file (JSON; see the repository README)");
    cmd->add_option("--point", flags->point,
                    "base point override: two rationals, e.g. --point 0 -1")
        ->expected(2);
    cmd->add_option("--order", flags->order,
                    "truncation order override (rejected when too small)");
  }
  cmd->add_option("--format", flags->format, "output format")
      ->check(CLI::IsMember({"json", "csv", "text"}));
  cmd->add_option("--out", cfg->out_path, "write the report to this file");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "wahllab: exact kernel filtrations, base-point certificates, and "
      "variation pairing bands for algebraic curves"};
  app.require_subcommand(1);

  wahllab::RunConfig cfg;
  ParsedFlags flags;

  CLI::App* filtration = app.add_subcommand(
      "filtration", "even kernel filtration of the quadric space");
  add_common_flags(filtration, &cfg, &flags, true);
  filtration->add_option("--max-level", flags.max_level,
                         "filtration ceiling (even; default 6g-6)");
  filtration->add_flag("--exact-only", cfg.exact_only,
                       "skip the modular cross-check of the dimension chain");

  CLI::App* rho_band = app.add_subcommand(
      "rho-band", "pairing band of the deepest kernel quadric");
  add_common_flags(rho_band, &cfg, &flags, true);
  rho_band->add_option("--max-level", flags.max_level,
                       "filtration ceiling used to pin the quadric level");

  CLI::App* certify = app.add_subcommand(
      "certify-point", "base-point genericity certificate");
  add_common_flags(certify, &cfg, &flags, true);

  CLI::App* constants = app.add_subcommand(
      "constants", "band constant table for one even level");
  constants->add_option("--m", flags.constants_m, "even level >= 0")
      ->required();
  add_common_flags(constants, &cfg, &flags, false);

  CLI::App* osculating = app.add_subcommand(
      "osculating", "osculating flag of the weight-2 embedding");
  add_common_flags(osculating, &cfg, &flags, true);
  osculating->add_option(
      "--n", flags.flag_depth,
      "flag depth (default: the deepest certified depth of the base point)");

  CLI::App* report = app.add_subcommand(
      "report", "full document: certificate, chain, rank table, band, bound");
  add_common_flags(report, &cfg, &flags, true);
  report->add_flag("--exact-only", cfg.exact_only,
                   "skip the modular cross-check of the dimension chain");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  CLI::App* chosen = app.get_subcommands().front();
  cfg.command = chosen->get_name();
  cfg.format = flags.format == "csv"    ? wahllab::OutputFormat::Csv
               : flags.format == "text" ? wahllab::OutputFormat::Text
                                        : wahllab::OutputFormat::Json;
  auto given = [&](const char* name) {
    const CLI::Option* opt = chosen->get_option_no_throw(name);
    return opt != nullptr && opt->count() > 0;
  };
  if (given("--order")) cfg.order_override = flags.order;
  if (given("--max-level")) cfg.max_level = flags.max_level;
  if (given("--n")) cfg.flag_depth = flags.flag_depth;
  if (given("--m")) cfg.constants_m = flags.constants_m;
  if (!flags.point.empty()) {
    try {
      cfg.point_override = wahllab::RatPoint{wahllab::parse_rat(flags.point[0]),
                                             wahllab::parse_rat(flags.point[1])};
    } catch (const wahllab::Error& e) {
      std::cerr << "error: --point: " << e.what() << "\n";
      return 2;
    }
  }

  return wahllab::run(cfg, std::cout, std::cerr);
}
