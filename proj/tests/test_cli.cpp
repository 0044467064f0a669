#include <doctest.h>

#include <algorithm>

#include <json.hpp>

#include "cli_runner.hpp"

using nlohmann::json;

namespace {

json error_of(const cli::Result& r) { return json::parse(r.err); }

}  // namespace

TEST_CASE("construct writes a map") {
  const auto r = cli::run("construct --preset example1 --q 0.5 --order 16");
  REQUIRE(r.exit_code == 0);
  const json m = json::parse(r.out);
  CHECK(m["q"] == 0.5);
  CHECK(m["h"]["order"] == 16);
  CHECK(m["h"]["re"][1] == 1.0);
  CHECK(m["g"]["re"][2] == 0.5);
  CHECK(json::parse(r.err)["normalization"]["normalized"] == true);
}

TEST_CASE("construct from F and omega files") {
  const auto dir = cli::scratch();
  std::ofstream(dir / "F.json") << R"({"re": [0, 1, -0.5], "im": [0, 0, 0]})";
  std::ofstream(dir / "w.json") << R"({"re": [0, 0.75], "im": [0, 0]})";
  const auto r = cli::run("construct --q 0.5 --F " + (dir / "F.json").string() +
                          " --omega " + (dir / "w.json").string());
  REQUIRE(r.exit_code == 0);
  const json m = json::parse(r.out);
  CHECK(m["h"]["re"] == json({0.0, 1.0, 0.0}));
  CHECK(m["g"]["re"] == json({0.0, 0.0, 0.5}));

  std::ofstream(dir / "w1.json") << R"({"re": [1, 0], "im": [0, 0]})";
  const auto bad = cli::run("construct --q 0.5 --F " + (dir / "F.json").string() +
                            " --omega " + (dir / "w1.json").string());
  CHECK(bad.exit_code == 3);
  CHECK(error_of(bad)["error"] == "ShearSingularity");
}

TEST_CASE("configuration errors exit 2") {
  auto r = cli::run("construct --preset nope");
  CHECK(r.exit_code == 2);
  CHECK(error_of(r)["error"] == "UnknownPreset");

  r = cli::run("report --q 1.5");
  CHECK(r.exit_code == 2);
  CHECK(error_of(r)["error"] == "InvalidQ");

  r = cli::run("construct --preset identity --q abc");
  CHECK(r.exit_code == 2);

  r = cli::run("construct --preset identity --order 4");
  CHECK(r.exit_code == 2);

  r = cli::run("combine --presets s3_f1,s3_f2 --weights 0.5,0.6");
  CHECK(r.exit_code == 2);
  CHECK(error_of(r)["error"] == "WeightError");

  r = cli::run("frobnicate");
  CHECK(r.exit_code == 2);
}

TEST_CASE("I/O errors exit 4") {
  auto r = cli::run("construct --preset identity -o /nonexistent-dir/x.json");
  CHECK(r.exit_code == 4);
  CHECK(error_of(r)["error"] == "IoError");
  r = cli::run("verify --map /nonexistent-dir/x.json");
  CHECK(r.exit_code == 4);
}

TEST_CASE("mixed q in a combination exits 3") {
  const auto dir = cli::scratch();
  REQUIRE(cli::run("construct --preset s3_f1 --q 0.3 --order 16 -o " +
                   (dir / "a3.json").string()).exit_code == 0);
  REQUIRE(cli::run("construct --preset s3_f2 --q 0.5 --order 16 -o " +
                   (dir / "b5.json").string()).exit_code == 0);
  const auto r = cli::run("combine --maps " + (dir / "a3.json").string() + "," +
                          (dir / "b5.json").string());
  CHECK(r.exit_code == 3);
  CHECK(error_of(r)["error"] == "MixedParamError");
}

TEST_CASE("combine with checks and a sweep") {
  const auto r = cli::run("combine --presets s3_f1,s3_f2 --q 0.5 --order 32 --t-sweep 3 "
                          "--check qth --samples 64");
  REQUIRE(r.exit_code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc["results"].size() == 3);
  CHECK(doc["pass"] == true);
  CHECK(doc["results"][1]["weights"] == json({0.5, 0.5}));
  CHECK(doc["results"][1]["reports"][0]["check"] == "qth");
}

TEST_CASE("verify") {
  auto r = cli::run("verify --preset half_plane --q classical --check halfplane,univalence,convex");
  REQUIRE(r.exit_code == 0);
  CHECK(json::parse(r.out)["pass"] == true);

  r = cli::run("verify --preset identity --check halfplane");
  REQUIRE(r.exit_code == 0);
  CHECK(json::parse(r.out)["pass"] == false);

  r = cli::run("verify --preset identity --check bogus");
  CHECK(r.exit_code == 2);
}

TEST_CASE("render") {
  auto r = cli::run("render --preset example1 --q 0.5 --order 16 --format csv --samples 64 "
                    "--radial-lines 4");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.rfind("r,theta,re,im\n", 0) == 0);
  // 10 circles and 4 radial lines of 64 points each, plus the header.
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 14 * 64 + 1);

  r = cli::run("render --preset example1 --q 0.5 --order 16 --samples 64");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.find("<svg") != std::string::npos);
  CHECK(r.out.find("<polygon") != std::string::npos);
  CHECK(r.out.find("<polyline") != std::string::npos);

  r = cli::run("render --preset example1 --format png");
  CHECK(r.exit_code == 2);
}

TEST_CASE("output directory from the environment") {
  const auto dir = cli::scratch() / "outdir";
  std::filesystem::create_directories(dir);
  const auto r = cli::run("construct --preset identity --order 8 -o env.json");
  REQUIRE(r.exit_code == 0);
  const std::string cmd = "QHARM_OUTPUT_DIR=\"" + dir.string() + "\" \"" + QHARM_CLI +
                          "\" construct --preset identity --order 8 -o env.json 2>/dev/null";
  REQUIRE(std::system(cmd.c_str()) == 0);
  CHECK(std::filesystem::exists(dir / "env.json"));
  std::filesystem::remove("env.json");
}

TEST_CASE("report at the classical marker") {
  const auto r = cli::run("report --q classical");
  CHECK(r.exit_code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc["q"] == "classical");
  CHECK(doc["pass"] == true);
  CHECK(doc["checks"].back()["check"] == "classical_degeneration");
}
