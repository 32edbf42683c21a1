#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <doctest.h>
#include <json.hpp>

#include <sys/wait.h>
#include <unistd.h>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

fs::path scratch_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() /
                 ("plspan_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void spit(const fs::path& p, const std::string& text) {
  std::ofstream f(p, std::ios::binary);
  f << text;
}

RunResult run_cli(const std::string& args) {
  static int counter = 0;
  fs::path out = scratch_dir() / ("stdout_" + std::to_string(counter) + ".txt");
  fs::path err = scratch_dir() / ("stderr_" + std::to_string(counter) + ".txt");
  ++counter;
  std::string cmd = std::string(PLSPAN_CLI_BIN) + " " + args + " > " +
                    out.string() + " 2> " + err.string();
  int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

std::string trefoil_path() {
  return std::string(PLSPAN_DATA_DIR) + "/trefoil7.poly";
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("validate accepts the bundled trefoil") {
  RunResult r = run_cli("validate --input " + trefoil_path());
  REQUIRE(r.exit_code == 0);
  json j = json::parse(r.out);
  CHECK(j["dim"] == 3);
  CHECK(j["n"] == 7);
  CHECK(j["ok"] == true);
  CHECK(j["issues"].empty());
  CHECK(j["notes"].empty());
}

TEST_CASE("validate reports self-intersections and exits 1") {
  fs::path bow = scratch_dir() / "bowtie.poly";
  spit(bow, "2 4\n0 0\n2 2\n2 0\n0 2\n");
  RunResult r = run_cli("validate --input " + bow.string());
  CHECK(r.exit_code == 1);
  json j = json::parse(r.out);
  CHECK(j["ok"] == false);
  REQUIRE(j["issues"].size() == 1);
  CHECK(j["issues"][0]["kind"] == "SelfIntersection");
  CHECK(j["issues"][0]["i"] == 0);
  CHECK(j["issues"][0]["j"] == 2);
}

TEST_CASE("diagram reports the trefoil crossings exactly") {
  RunResult r = run_cli("diagram --input " + trefoil_path());
  REQUIRE(r.exit_code == 0);
  json j = json::parse(r.out);
  CHECK(j["n"] == 7);
  CHECK(j["c"] == 3);
  CHECK(j["writhe"] == 3);
  CHECK(j["frame"]["w"] == json::array({"0", "0", "1"}));
  REQUIRE(j["crossings"].size() == 3);
  CHECK(j["crossings"][0]["over"] == 4);
  CHECK(j["crossings"][0]["under"] == 1);
  CHECK(j["crossings"][0]["sign"] == 1);
  CHECK(j["crossings"][0]["params"] ==
        json::array({"114919/194619", "14620678/16153377"}));
}

TEST_CASE("seifert spans the trefoil with 59 triangles") {
  fs::path off = scratch_dir() / "trefoil.off";
  fs::path rep = scratch_dir() / "trefoil_seifert.json";
  RunResult r = run_cli("seifert --input " + trefoil_path() + " --out " +
                        off.string() + " --report " + rep.string());
  REQUIRE(r.exit_code == 0);
  json j = json::parse(slurp(rep));
  CHECK(j["n"] == 7);
  CHECK(j["c"] == 3);
  CHECK(j["s"] == 2);
  CHECK(j["ledger"]["disk"] == 15);
  CHECK(j["ledger"]["wall"] == 38);
  CHECK(j["ledger"]["band"] == 6);
  CHECK(j["ledger"]["total"] == 59);
  CHECK(j["chi"] == -1);
  CHECK(j["genus"] == 1);
  CHECK(j["bounds"]["paper_3n14c"] == 63);
  CHECK(j["bounds"]["paper_7n2"] == 217);
  CHECK(j["writhe"] == 3);
  CHECK(j["strategy"] == "white");

  std::string offtext = slurp(off);
  CHECK(offtext.substr(0, 11) == "OFF\n38 59 0");
}

TEST_CASE("seifert spans a flat square with 10 triangles") {
  fs::path sq = scratch_dir() / "square.poly";
  spit(sq, "3 4\n0 0 1\n2 0 1\n2 2 1\n0 2 1\n");
  RunResult r = run_cli("seifert --input " + sq.string());
  REQUIRE(r.exit_code == 0);
  json j = json::parse(r.out);
  CHECK(j["c"] == 0);
  CHECK(j["s"] == 1);
  CHECK(j["ledger"]["total"] == 10);
  CHECK(j["genus"] == 0);
}

TEST_CASE("seifert writes lossless JSON meshes on request") {
  fs::path mesh = scratch_dir() / "trefoil_mesh.json";
  RunResult r = run_cli("seifert --input " + trefoil_path() +
                        " --format json --out " + mesh.string() +
                        " --report /dev/null");
  REQUIRE(r.exit_code == 0);
  json j = json::parse(slurp(mesh));
  CHECK(j["dim"] == 3);
  CHECK(j["vertices"].size() == 38);
  CHECK(j["triangles"].size() == 59);
}

TEST_CASE("gen ngon feeds triangulate-planar") {
  fs::path hex = scratch_dir() / "hex.poly";
  RunResult g = run_cli("gen ngon --n 6 --out " + hex.string());
  REQUIRE(g.exit_code == 0);
  RunResult t = run_cli("triangulate-planar --input " + hex.string());
  REQUIRE(t.exit_code == 0);
  json j = json::parse(t.out);
  CHECK(j["n"] == 6);
  CHECK(j["triangle_count"] == 4);
  CHECK(j["checks"]["embedded"] == true);
  CHECK(j["checks"]["disk_topology"] == true);
}

TEST_CASE("gen torus emits the frozen six-stick polygon") {
  RunResult r = run_cli("gen torus --m 3");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out ==
        "3 6\n"
        "2 0 1\n"
        "-2793/10985 10624/10985 -1\n"
        "-16450/16417 -28416/16417 1\n"
        "63/65 -16/65 -1\n"
        "-16450/16417 28416/16417 1\n"
        "-19929/28121 -19840/28121 -1\n");
}

TEST_CASE("gen random honors the report option") {
  fs::path poly = scratch_dir() / "rand4.poly";
  fs::path rep = scratch_dir() / "rand4.json";
  RunResult r = run_cli("gen random --n 5 --dim 4 --seed 1 --out " +
                        poly.string() + " --report " + rep.string());
  REQUIRE(r.exit_code == 0);
  json j = json::parse(slurp(rep));
  CHECK(j["family"] == "random");
  CHECK(j["n"] == 5);
  CHECK(j["dim"] == 4);
}

TEST_CASE("bounds combines diagram data with the genus input") {
  RunResult r = run_cli("bounds --input " + trefoil_path() + " --genus 1");
  REQUIRE(r.exit_code == 0);
  json j = json::parse(r.out);
  CHECK(j["n"] == 7);
  CHECK(j["c"] == 3);
  CHECK(j["writhe"] == 3);
  CHECK(j["genus"] == "1");
  CHECK(j["values"]["lb_genus"] == 5);
  CHECK(j["values"]["lb_writhe"] == 4);
  CHECK(j["values"]["lb_crossings"] == 0);
  CHECK(j["values"]["ub_ledger"] == 63);
  CHECK(j["values"]["ub_7n2"] == 217);
}

TEST_CASE("bench-gamma stays inside the band on the writhe family") {
  RunResult r = run_cli("bench-gamma --family writhe --m 1..2");
  REQUIRE(r.exit_code == 0);
  json j = json::parse(r.out);
  CHECK(j["family"] == "writhe");
  CHECK(j["band"]["upper"] == "7");
  REQUIRE(j["rows"].size() == 2);
  CHECK(j["rows"][0]["m"] == 1);
  CHECK(j["rows"][0]["n"] == 9);
  CHECK(j["ok"] == true);
}

TEST_CASE("cone and annulus4 span generated polygons") {
  fs::path p5 = scratch_dir() / "rand5.poly";
  REQUIRE(run_cli("gen random --n 5 --dim 5 --seed 3 --out " + p5.string())
              .exit_code == 0);
  RunResult c = run_cli("cone --input " + p5.string());
  REQUIRE(c.exit_code == 0);
  json cj = json::parse(c.out);
  CHECK(cj["triangle_count"] == 5);
  CHECK(cj["checks"]["embedded"] == true);

  fs::path p4 = scratch_dir() / "rand4b.poly";
  REQUIRE(run_cli("gen random --n 5 --dim 4 --seed 1 --out " + p4.string())
              .exit_code == 0);
  RunResult a = run_cli("annulus4 --input " + p4.string());
  REQUIRE(a.exit_code == 0);
  json aj = json::parse(a.out);
  CHECK(aj["triangle_count"] == 15);
  CHECK(aj["checks"]["complementary"] == true);

  RunResult e = run_cli("embed4 --input " + p4.string());
  REQUIRE(e.exit_code == 0);
  json ej = json::parse(e.out);
  CHECK(ej["budget_24n2"] == 600);
  CHECK(ej["triangle_count"] <= 600);
  CHECK(ej["checks"]["embedded"] == true);

  RunResult wrong = run_cli("embed4 --input " + trefoil_path());
  CHECK(wrong.exit_code == 1);
}

TEST_CASE("identical invocations produce byte-identical artifacts") {
  fs::path rep1 = scratch_dir() / "det1.json";
  fs::path rep2 = scratch_dir() / "det2.json";
  fs::path off1 = scratch_dir() / "det1.off";
  fs::path off2 = scratch_dir() / "det2.off";
  std::string base = "seifert --input " + trefoil_path() + " --seed 7 ";
  REQUIRE(run_cli(base + "--out " + off1.string() + " --report " +
                  rep1.string())
              .exit_code == 0);
  REQUIRE(run_cli(base + "--out " + off2.string() + " --report " +
                  rep2.string())
              .exit_code == 0);
  CHECK(slurp(rep1) == slurp(rep2));
  CHECK(slurp(off1) == slurp(off2));
  CHECK_FALSE(slurp(rep1).empty());
}

TEST_CASE("usage and parse failures exit 2, --help exits 0") {
  CHECK(run_cli("diagram").exit_code == 2);             // missing --input
  CHECK(run_cli("validate --nope x").exit_code == 2);   // unknown flag
  CHECK(run_cli("frobnicate").exit_code == 2);          // unknown subcommand
  CHECK(run_cli("gen saddle").exit_code == 2);          // bad family choice

  fs::path junk = scratch_dir() / "junk.poly";
  spit(junk, "not a polygon\n");
  CHECK(run_cli("validate --input " + junk.string()).exit_code == 2);

  RunResult help = run_cli("--help");
  CHECK(help.exit_code == 0);
  CHECK(help.out.find("Triangulated PL surfaces") != std::string::npos);
}

}  // TEST_SUITE
