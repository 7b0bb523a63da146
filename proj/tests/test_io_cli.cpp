#include <cstdio>
#include <filesystem>
#include <unistd.h>
#include <string>

#include "doctest.h"
#include "gbo/cli.hpp"
#include "gbo/io.hpp"
#include "test_util.hpp"

using namespace gbo;
using namespace gbo::testutil;

namespace {

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("gbo_test_" + std::to_string(::getpid()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  std::string file(const char* name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("field snapshots round trip bit-exactly") {
  TempDir tmp;
  SpectralGrid g(64, 17.5);
  Field f = random_real(g, 3);
  const std::string path = tmp.file("f.gbf");
  write_field(path, f);
  Field back = read_field(path);
  CHECK(back.grid() == g);
  CHECK(back.is_real());
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(back[i] == f[i]);

  Field z = random_complex(g, 4);
  write_field(path, z);
  Field zback = read_field(path);
  CHECK_FALSE(zback.is_real());
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(zback[i] == z[i]);
}

TEST_CASE("trajectories round trip bit-exactly") {
  TempDir tmp;
  SpectralGrid g(32, 9.0);
  std::vector<Field> frames;
  for (int m = 0; m < 4; ++m) frames.push_back(random_real(g, 5, m));
  Trajectory u(0.25, 0.125, std::move(frames));
  const std::string path = tmp.file("u.gbt");
  write_trajectory(path, u);
  Trajectory back = read_trajectory(path);
  CHECK(back.node_count() == 4);
  CHECK(back.t0() == u.t0());
  CHECK(back.dt() == u.dt());
  for (std::size_t m = 0; m < 4; ++m)
    for (std::size_t i = 0; i < g.size(); ++i)
      CHECK(back.frame(m)[i] == u.frame(m)[i]);
}

TEST_CASE("corrupt containers are rejected with structural errors") {
  TempDir tmp;
  SpectralGrid g(32, 9.0);
  const std::string path = tmp.file("f.gbf");
  write_field(path, random_real(g, 6));
  std::string bytes = read_file_bytes(path);

  std::string wrong_magic = bytes;
  wrong_magic[0] = 'X';
  write_file_bytes(tmp.file("bad1"), wrong_magic);
  CHECK_THROWS_AS(read_field(tmp.file("bad1")), StructuralError);

  write_file_bytes(tmp.file("bad2"), bytes.substr(0, bytes.size() - 9));
  CHECK_THROWS_AS(read_field(tmp.file("bad2")), StructuralError);

  write_file_bytes(tmp.file("bad3"), bytes + "junk");
  CHECK_THROWS_AS(read_field(tmp.file("bad3")), StructuralError);

  CHECK_THROWS_AS(read_field(tmp.file("missing")), StructuralError);
  // A trajectory header on a field reader and vice versa.
  Trajectory u = constant_trajectory(random_real(g, 7), 0.0, 0.5, 3);
  write_trajectory(tmp.file("u.gbt"), u);
  CHECK_THROWS_AS(read_field(tmp.file("u.gbt")), StructuralError);
  CHECK_THROWS_AS(read_trajectory(path), StructuralError);
}

TEST_CASE("config parsing accepts the documented keys and rejects others") {
  RunConfig def = parse_config("");
  CHECK(def.k == 4);
  CHECK(def.n == 1024);
  CHECK(def.resolved_s() == doctest::Approx(0.25));

  RunConfig cfg = parse_config(
      "# comment line\n"
      "k = 5\n"
      "n = 256\n"
      "s = 0.3\n"
      "T = 2.0\n"
      "seed = 11\n");
  CHECK(cfg.k == 5);
  CHECK(cfg.n == 256);
  CHECK(cfg.resolved_s() == doctest::Approx(0.3));
  CHECK(cfg.T == 2.0);
  CHECK(cfg.seed == 11);

  CHECK_THROWS_WITH_AS(parse_config("bogus = 1\n"),
                       doctest::Contains("unknown config key"),
                       StructuralError);
  CHECK_THROWS_WITH_AS(parse_config("k = 2\n"), doctest::Contains("k"),
                       StructuralError);
  CHECK_THROWS_WITH_AS(parse_config("n = 100\n"), doctest::Contains("n"),
                       StructuralError);
  // Negative dt is a legitimate backward run; only zero is rejected.
  CHECK(parse_config("dt = -1\n").dt == -1.0);
  CHECK_THROWS_WITH_AS(parse_config("dt = 0\n"), doctest::Contains("dt"),
                       StructuralError);
  CHECK_THROWS_AS(parse_config("k = abc\n"), StructuralError);
}

TEST_CASE("config echo omits execution-only knobs") {
  RunConfig cfg;
  cfg.workers = 8;
  cfg.out = "somewhere.gbt";
  nlohmann::json j = config_to_json(cfg);
  CHECK_FALSE(j.contains("workers"));
  CHECK_FALSE(j.contains("out"));
  CHECK(j.contains("k"));
  CHECK(j.contains("seed"));
}

TEST_CASE("sha1 matches the published test vector") {
  CHECK(sha1_hex("abc") == "a9993e364706816aba3e25717850c26c9cd0d89d");
  CHECK(sha1_hex("") == "da39a3ee5e6b4b0d3255bfef95601890afd80709");
}

TEST_CASE("ndjson reports parse line by line") {
  Report r;
  r.command = "probe";
  r.config = {{"k", 4}};
  r.input_hash = sha1_hex("data");
  r.summary = {{"value", 0.5}};
  r.records = {{{"row", 0}, {"x", 1.5}}, {{"row", 1}, {"x", 2.5}}};
  r.columns = {"row", "x"};
  const std::string text = emit_ndjson(r);
  std::vector<std::string> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const auto nl = text.find('\n', pos);
    lines.push_back(text.substr(pos, nl - pos));
    pos = nl + 1;
  }
  REQUIRE(lines.size() == 3);
  nlohmann::json env = nlohmann::json::parse(lines[0]);
  CHECK(env["schema"] == "gbo.report.v1");
  CHECK(env["command"] == "probe");
  CHECK(env["summary"]["value"] == 0.5);
  CHECK(nlohmann::json::parse(lines[1])["row"] == 0);
  CHECK(nlohmann::json::parse(lines[2])["x"] == 2.5);
}

TEST_CASE("csv reports carry a header and full-precision floats") {
  Report r;
  r.columns = {"a", "b"};
  r.records = {{{"a", 0.1}, {"b", "text,with comma"}}};
  const std::string text = emit_csv(r);
  CHECK(text.substr(0, 4) == "a,b\n");
  CHECK(text.find("0.10000000000000001") != std::string::npos);
  CHECK(text.find("\"text,with comma\"") != std::string::npos);
  Report empty;
  empty.columns = {"x"};
  CHECK(emit_csv(empty) == "x\n");
}

TEST_CASE("cli rejects unknown commands and missing inputs") {
  CHECK(run_gbo_cli({}) == 64);
  CHECK(run_gbo_cli({"frobnicate"}) == 64);
  CHECK(run_gbo_cli({"norms"}) == 1);             // --spec is required
  CHECK(run_gbo_cli({"simulate"}) == 1);          // --u0 is required
  CHECK(run_gbo_cli({"verify"}) == 1);            // --estimate is required
  CHECK(run_gbo_cli({"verify", "--estimate", "nope"}) == 1);
}

TEST_CASE("cli round trip: make data, evaluate a norm, verify unitarity") {
  TempDir tmp;
  const std::string u0 = tmp.file("u0.gbf");
  const std::string rep = tmp.file("report.ndjson");
  CHECK(run_gbo_cli({"make-data", "--kind", "bump", "--amp", "0.25", "--n",
                     "256", "--out", u0, "--report", rep}) == 0);
  Field f = read_field(u0);
  CHECK(f.grid().size() == 256);
  CHECK(l2_norm(f) == doctest::Approx(0.25).epsilon(1e-12));

  CHECK(run_gbo_cli({"norms", "--field", u0, "--spec", "sobolev_hom", "--s",
                     "0.25", "--report", rep}) == 0);
  nlohmann::json env = nlohmann::json::parse(
      read_file_bytes(rep).substr(0, read_file_bytes(rep).find('\n')));
  CHECK(env["summary"]["value"].get<double>() ==
        doctest::Approx(sobolev_norm(f, 0.25, true)));

  CHECK(run_gbo_cli({"verify", "--estimate", "est0", "--trials", "2",
                     "--octaves", "0", "--nodes", "17", "--n", "256",
                     "--report", rep}) == 0);
  env = nlohmann::json::parse(
      read_file_bytes(rep).substr(0, read_file_bytes(rep).find('\n')));
  CHECK(env["summary"]["max_ratio"].get<double>() ==
        doctest::Approx(1.0).epsilon(1e-12));
}
