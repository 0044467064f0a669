#include <doctest.h>

#include <cmath>
#include <filesystem>

#include "oracles.hpp"
#include "qharm/serialize.hpp"
#include "qharm/verify.hpp"

using namespace qharm;
using nlohmann::json;

TEST_CASE("round15") {
  CHECK(round15(0.1 + 0.2) == 0.3);
  CHECK(round15(1.0 / 3.0) == 0.333333333333333);
  CHECK(round15(-0.0) == 0.0);
  CHECK(std::signbit(round15(-0.0)) == false);
  CHECK(round15(1e300) == 1e300);
  CHECK(std::isinf(round15(INFINITY)));

  oracle::Rng rng(1);
  for (int i = 0; i < 1000; ++i) {
    const double x = rng.uniform(-1e3, 1e3);
    CHECK(round15(round15(x)) == round15(x));
    CHECK(std::abs(round15(x) - x) <= 1e-14 * std::abs(x));
  }
}

TEST_CASE("series JSON") {
  const TruncatedSeries s{Complex(0.0, 0.0), Complex(1.0, -2.0), Complex(0.5, 0.25)};
  const json j = to_json(s);
  CHECK(j["order"] == 2);
  CHECK(j["re"] == json({0.0, 1.0, 0.5}));
  CHECK(j["im"] == json({0.0, -2.0, 0.25}));
  CHECK(series_from_json(j) == s);

  CHECK_THROWS_AS(series_from_json(json{{"re", {1.0}}}), ConfigError);
  CHECK_THROWS_AS(series_from_json(json{{"re", {1.0, 2.0}}, {"im", {0.0}}}), ConfigError);
  CHECK_THROWS_AS(series_from_json(json{{"re", json::array()}, {"im", json::array()}}),
                  ConfigError);
  CHECK_THROWS_AS(series_from_json(json{{"order", 3}, {"re", {1.0}}, {"im", {0.0}}}),
                  ConfigError);
  CHECK_THROWS_AS(series_from_json(json{{"re", {"x"}}, {"im", {0.0}}}), ConfigError);
  try {
    series_from_json(json::array());
    FAIL("expected a throw");
  } catch (const ConfigError& e) {
    CHECK(e.kind() == "InvalidJson");
  }
}

TEST_CASE("map JSON round trip") {
  for (const auto& name : preset_names()) {
    CAPTURE(name);
    const HarmonicMap f = preset(name, QParam::of(0.37), 40);
    const json j = to_json(f);
    const HarmonicMap back = map_from_json(j);
    // Serialized values are rounded; a second pass is a fixed point.
    CHECK(dump(to_json(back)) == dump(j));
    CHECK(back.q() == f.q());
  }
  const HarmonicMap c = preset("identity", QParam::classical(), 8);
  CHECK(to_json(c)["q"] == "classical");
  CHECK(map_from_json(to_json(c)).q().is_classical());

  CHECK_THROWS_AS(map_from_json(json{{"h", to_json(TruncatedSeries{0.0, 1.0})}}), ConfigError);
  CHECK_THROWS_AS(qparam_from_json("quantum"), ConfigError);
  CHECK_THROWS_AS(qparam_from_json(2.0), ConfigError);
}

TEST_CASE("report JSON") {
  const VerificationReport r =
      check_half_plane_range(preset("identity", QParam::of(0.5), 8), SampleGrid({0.6}, 16));
  const json j = to_json(r);
  CHECK(j["check"] == "half_plane_range");
  CHECK(j["pass"] == false);
  CHECK(j["extremal"]["value"] == -0.6);
  CHECK(j["evidence"] == "numerical sampling, not a proof");
  CHECK(j["per_radius"].size() == 1);
  CHECK(j["grid"]["angles"] == 16);
}

TEST_CASE("atomic file writes") {
  const auto dir = std::filesystem::temp_directory_path() / "qharm-serialize-test";
  std::filesystem::create_directories(dir);
  const auto path = dir / "out.json";
  write_file_atomic(path, "{\"a\": 1}\n");
  write_file_atomic(path, dump(json{{"b", 2}}));
  CHECK(read_json_file(path)["b"] == 2);
  CHECK_FALSE(std::filesystem::exists(dir / "out.json.tmp"));

  CHECK_THROWS_AS(write_file_atomic(dir / "missing" / "x.json", "x"), IoError);
  CHECK_THROWS_AS(read_json_file(dir / "nope.json"), IoError);
  write_file_atomic(dir / "bad.json", "{not json");
  CHECK_THROWS_AS(read_json_file(dir / "bad.json"), ConfigError);
  std::filesystem::remove_all(dir);
}
