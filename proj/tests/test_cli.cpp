// Driver tests: run() as a library call (exit code + parsed JSON), then the
// installed binary through a shell for flag parsing and process exit codes.

#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "wahllab/cli.hpp"

using namespace wahllab;

namespace {

struct CliResult {
  int code = -1;
  std::string output;
  std::string err;
  nlohmann::json json;  // parsed when the run succeeded in json format
};

CliResult run_config(const RunConfig& cfg) {
  std::ostringstream out, err;
  CliResult r;
  r.code = run(cfg, out, err);
  r.output = out.str();
  r.err = err.str();
  if (r.code == 0 && cfg.format == OutputFormat::Json && cfg.out_path.empty())
    r.json = nlohmann::json::parse(r.output);
  return r;
}

std::string curve_file(const char* name) {
  return std::string(WAHLLAB_CURVES_DIR) + "/" + name;
}

RunConfig base_config(const char* command, const char* curve) {
  RunConfig cfg;
  cfg.command = command;
  cfg.curve_path = curve_file(curve);
  return cfg;
}

struct ProcResult {
  int code = -1;
  std::string output;
};

ProcResult run_binary(const std::string& args) {
  std::string cmd = std::string(WAHLLAB_CLI_BIN) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  ProcResult r;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.output.append(buf, n);
  int status = pclose(pipe);
  r.code = WEXITSTATUS(status);
  return r;
}

}  // namespace

TEST_CASE("constants command emits the level-two table") {
  RunConfig cfg;
  cfg.command = "constants";
  cfg.constants_m = 2;
  CliResult r = run_config(cfg);
  REQUIRE(r.code == 0);
  const nlohmann::json& entries = r.json.at("entries");
  REQUIRE(entries.size() == 3);
  CHECK(entries[0].at("rational") == "1/24");
  CHECK(entries[1].at("rational") == "-1/12");
  CHECK(entries[2].at("rational") == "1/24");
  for (const auto& e : entries) CHECK(e.at("two_pi_i_exponent") == 1);

  SECTION("level zero pins the half-unit value") {
    cfg.constants_m = 0;
    CliResult r0 = run_config(cfg);
    REQUIRE(r0.code == 0);
    CHECK(r0.json.at("entries")[0].at("rational") == "1/2");
    CHECK(r0.json.at("entries")[0].at("two_pi_i_exponent") == 1);
  }

  SECTION("odd or missing level is a configuration error") {
    cfg.constants_m = 3;
    CHECK(run_config(cfg).code == 2);
    cfg.constants_m.reset();
    CliResult missing = run_config(cfg);
    CHECK(missing.code == 2);
    CHECK(missing.err.find("--m") != std::string::npos);
  }
}

TEST_CASE("filtration command on the local-model file") {
  RunConfig cfg = base_config("filtration", "rational_normal_local.json");
  cfg.exact_only = true;
  CliResult r = run_config(cfg);
  REQUIRE(r.code == 0);
  CHECK(r.json.at("arithmetic") == "exact");
  CHECK(r.json.at("input").at("genus") == 4);
  CHECK(r.json.at("input").at("order") == 140);
  CHECK(r.json.at("input").at("coordinate") == "z = x - x(p)");
  const nlohmann::json& filt = r.json.at("filtration");
  CHECK(filt.at("max_level") == 18);
  CHECK(filt.at("depth_level") == 0);
  CHECK(filt.at("first_zero_level") == 2);
  const nlohmann::json& chain = filt.at("chain");
  REQUIRE(chain.size() == 10);
  CHECK(chain[0].at("dim") == 3);
  CHECK(chain[0].at("strict_drop") == true);
  for (size_t i = 1; i < chain.size(); ++i) CHECK(chain[i].at("dim") == 0);
  CHECK(r.json.find("modular_advisory") == r.json.end());

  SECTION("the modular advisory pass mirrors the exact chain") {
    cfg.exact_only = false;
    CliResult rm = run_config(cfg);
    REQUIRE(rm.code == 0);
    CHECK(rm.json.at("arithmetic") == "exact with modular advisory");
    const nlohmann::json& advisory = rm.json.at("modular_advisory");
    REQUIRE(advisory.size() == 2);
    for (const auto& entry : advisory) {
      const nlohmann::json& dims = entry.at("dims");
      REQUIRE(dims.size() == chain.size());
      for (size_t i = 0; i < dims.size(); ++i)
        CHECK(dims[i] == chain[i].at("dim"));
    }
  }

  SECTION("csv renders the chain as a flat table") {
    cfg.format = OutputFormat::Csv;
    CliResult rc = run_config(cfg);
    REQUIRE(rc.code == 0);
    CHECK(rc.output.rfind("level,dim,strict_drop\n0,3,true\n2,0,true\n", 0) ==
          0);
  }
}

TEST_CASE("reports are deterministic and round-trip through JSON") {
  RunConfig cfg = base_config("filtration", "rational_normal_local.json");
  CliResult a = run_config(cfg);
  CliResult b = run_config(cfg);
  REQUIRE(a.code == 0);
  REQUIRE(b.code == 0);
  nlohmann::json ja = a.json;
  nlohmann::json jb = b.json;
  ja.erase("timing_ms");
  jb.erase("timing_ms");
  CHECK(ja.dump() == jb.dump());

  nlohmann::json reparsed = nlohmann::json::parse(ja.dump());
  CHECK(reparsed == ja);
}

TEST_CASE("driver exit codes map failure kinds") {
  SECTION("missing curve file path") {
    RunConfig cfg;
    cfg.command = "filtration";
    CliResult r = run_config(cfg);
    CHECK(r.code == 2);
    CHECK(r.err.find("--curve") != std::string::npos);
  }
  SECTION("unreadable curve file") {
    RunConfig cfg;
    cfg.command = "filtration";
    cfg.curve_path = curve_file("no_such_curve.json");
    CHECK(run_config(cfg).code == 2);
  }
  SECTION("explicit order below the command requirement") {
    RunConfig cfg = base_config("filtration", "fermat_quintic.json");
    cfg.order_override = 100;
    CliResult r = run_config(cfg);
    CHECK(r.code == 4);
    CHECK(r.err.find("350") != std::string::npos);
  }
  SECTION("hyperelliptic input refused by theorem-facing commands") {
    RunConfig cfg = base_config("certify-point", "hyperelliptic_g4.json");
    CliResult r = run_config(cfg);
    CHECK(r.code == 3);
    CHECK(r.err.find("refused") != std::string::npos);
  }
  SECTION("base point off the curve") {
    RunConfig cfg = base_config("certify-point", "fermat_quintic.json");
    cfg.point_override = RatPoint{Rat(1), Rat(1)};
    CHECK(run_config(cfg).code == 3);
  }
  SECTION("csv is only defined for the tabular commands") {
    RunConfig cfg = base_config("certify-point", "fermat_quintic.json");
    cfg.format = OutputFormat::Csv;
    CHECK(run_config(cfg).code == 2);
  }
  SECTION("odd or oversized filtration ceiling") {
    RunConfig cfg = base_config("filtration", "rational_normal_local.json");
    cfg.max_level = 3;
    CHECK(run_config(cfg).code == 2);
    cfg.max_level = 20;
    CHECK(run_config(cfg).code == 2);
  }
  SECTION("report insists on the full chain") {
    RunConfig cfg = base_config("report", "rational_normal_local.json");
    cfg.max_level = 2;
    CliResult r = run_config(cfg);
    CHECK(r.code == 2);
    CHECK(r.err.find("18") != std::string::npos);
  }
  SECTION("unknown command") {
    RunConfig cfg = base_config("spectrum", "fermat_quintic.json");
    CHECK(run_config(cfg).code == 2);
  }
}

TEST_CASE("rho-band command probes the deepest kernel quadric") {
  RunConfig cfg = base_config("rho-band", "rational_normal_local.json");
  CliResult r = run_config(cfg);
  REQUIRE(r.code == 0);
  const nlohmann::json& quadric = r.json.at("quadric");
  CHECK(quadric.at("kernel_level") == 0);
  const nlohmann::json& coords = quadric.at("coords");
  REQUIRE(coords.size() == 10);
  CHECK(coords[2] == "1");   // w0*w2 coefficient in pair coordinates
  CHECK(coords[4] == "-1");  // w1*w1 coefficient
  const nlohmann::json& band = r.json.at("band");
  CHECK(band.at("level") == 0);
  CHECK(band.at("size") == 9);
  CHECK(band.at("mu_at_base") == "1");
  CHECK(band.at("accidental_zero_at_base") == false);
  CHECK(band.at("certificate_required") == false);
  const nlohmann::json& cell = band.at("matrix")[0][0];
  CHECK(cell.at("tag") == "band");
  CHECK(cell.at("value").at("rational") == "1/2");
  CHECK(cell.at("value").at("two_pi_i_exponent") == 1);
  CHECK(band.at("matrix")[0][1].at("tag") == "unknown");
  CHECK(band.at("matrix")[1][0].at("tag") == "unknown");
}

TEST_CASE("certify-point command reports the honest special depths") {
  RunConfig cfg = base_config("certify-point", "fermat_quintic.json");
  CliResult r = run_config(cfg);
  REQUIRE(r.code == 0);
  const nlohmann::json& cert = r.json.at("certificate");
  CHECK(cert.at("bicanonical_dim") == 15);
  CHECK(cert.at("certified_through") == 9);
  CHECK(cert.at("all_ok") == false);
  const nlohmann::json& rows = cert.at("rows");
  REQUIRE(rows.size() == 15);
  CHECK(rows[9].at("n") == 10);
  CHECK(rows[9].at("defect") == 6);
  CHECK(rows[9].at("expected_defect") == 5);
  CHECK(rows[9].at("ok") == false);

  SECTION("the point override replaces the file's base point") {
    cfg.point_override = RatPoint{Rat(0), Rat(-1)};
    CliResult ro = run_config(cfg);
    REQUIRE(ro.code == 0);
    CHECK(ro.json.at("input").at("point").at("x") == "0");
    CHECK(ro.json.at("input").at("point").at("y") == "-1");
  }

  SECTION("the mirror rational point sits on a branch of the x-projection") {
    // (-1, 0) is on the curve, but F_y vanishes there, so the pinned
    // coordinate z = x - x(p) cannot expand the branch.
    cfg.point_override = RatPoint{Rat(-1), Rat(0)};
    CHECK(run_config(cfg).code == 3);
  }
}

TEST_CASE("osculating command defaults to the deepest certified depth") {
  RunConfig cfg = base_config("osculating", "fermat_quintic.json");
  cfg.flag_depth = 3;
  CliResult r = run_config(cfg);
  REQUIRE(r.code == 0);
  const nlohmann::json& flag = r.json.at("flag");
  CHECK(flag.at("n") == 3);
  CHECK(flag.at("section_dim") == 15);
  CHECK(flag.at("annihilator_dim") == 12);
  REQUIRE(flag.at("flag_rows").size() == 3);
  REQUIRE(flag.at("flag_rows")[0].size() == 15);

  SECTION("without --n the depth is the certificate's reach") {
    cfg.flag_depth.reset();
    CliResult rd = run_config(cfg);
    REQUIRE(rd.code == 0);
    CHECK(rd.json.at("flag").at("n") == 9);
    CHECK(rd.json.at("flag").at("annihilator_dim") == 6);
  }

  SECTION("a depth past the certificate's reach fails as a point error") {
    cfg.flag_depth = 12;
    CHECK(run_config(cfg).code == 3);
  }
}

TEST_CASE("report command assembles every section") {
  RunConfig cfg = base_config("report", "rational_normal_local.json");
  CliResult r = run_config(cfg);
  REQUIRE(r.code == 0);
  CHECK(r.json.at("certificate").at("all_ok") == false);  // toy data: honest
  CHECK(r.json.at("rank_table").at("all_pass") == true);
  CHECK(r.json.at("rank_table").at("top_kernel_dim") == 0);
  CHECK(r.json.at("rank_table").at("max_informative_l") == 5);
  CHECK(r.json.at("geodesic_bound").at("n_strict") == 1);
  CHECK(r.json.at("geodesic_bound").at("bound") == 8);
  CHECK(r.json.at("band").at("level") == 0);
  CHECK(r.json.at("band").at("mu_at_base") == "1");
  CHECK(r.json.at("quadric").at("kernel_level") == 0);
  REQUIRE(r.json.at("modular_advisory").size() == 2);

  SECTION("csv emits the chain and the rank table") {
    cfg.format = OutputFormat::Csv;
    CliResult rc = run_config(cfg);
    REQUIRE(rc.code == 0);
    CHECK(rc.output.find("level,dim,strict_drop\n") != std::string::npos);
    CHECK(rc.output.find("\n\nl,level,kernel_dim_below,") !=
          std::string::npos);
    CHECK(rc.output.find("9,0,10,7,100,true,true,false\n") !=
          std::string::npos);
  }
}

TEST_CASE("output lands in the requested file") {
  RunConfig cfg;
  cfg.command = "constants";
  cfg.constants_m = 0;
  cfg.out_path = std::string(WAHLLAB_BUILD_DIR) + "/constants_m0.json";
  CliResult r = run_config(cfg);
  REQUIRE(r.code == 0);
  CHECK(r.output.empty());
  std::ifstream in(cfg.out_path);
  REQUIRE(in.good());
  nlohmann::json j = nlohmann::json::parse(in);
  CHECK(j.at("entries")[0].at("rational") == "1/2");
}

TEST_CASE("installed binary handles flags and exit codes") {
  ProcResult help = run_binary("--help");
  CHECK(help.code == 0);
  CHECK(help.output.find("filtration") != std::string::npos);
  CHECK(help.output.find("rho-band") != std::string::npos);

  ProcResult table = run_binary("constants --m 2 --format text");
  CHECK(table.code == 0);
  CHECK(table.output.find("c(2,2) = -1/12·2πi") != std::string::npos);

  ProcResult csv = run_binary("filtration --curve \"" +
                              curve_file("rational_normal_local.json") +
                              "\" --exact-only --format csv");
  CHECK(csv.code == 0);
  CHECK(csv.output.rfind("level,dim,strict_drop\n0,3,true\n", 0) == 0);

  ProcResult refused = run_binary("certify-point --curve \"" +
                                  curve_file("hyperelliptic_g4.json") + "\"");
  CHECK(refused.code == 3);
  CHECK(refused.output.find("refused") != std::string::npos);

  ProcResult override_pt = run_binary(
      "certify-point --curve \"" + curve_file("fermat_quintic.json") +
      "\" --point 1 1");
  CHECK(override_pt.code == 3);

  CHECK(run_binary("filtration --no-such-flag").code == 2);
  CHECK(run_binary("constants").code == 2);
  CHECK(run_binary("").code == 2);
}
