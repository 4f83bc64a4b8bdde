#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "nhzak/config.hpp"
#include "nhzak/csv.hpp"
#include "nhzak/errors.hpp"
#include "nhzak/run.hpp"

using namespace nhzak;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("nhzak_test_" + name);
  fs::remove_all(p);
  return p;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(NHZAK_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_SUITE("config") {

TEST_CASE("defaults") {
  const RunConfig c = parse_config(R"({"delta": 0.15, "Delta": 0.1})");
  CHECK(c.command == "zak");
  CHECK(c.flux == 0.0);
  CHECK(c.n_cells == 250);
  CHECK(c.width == 0.05);
  CHECK(c.momentum == doctest::Approx(0.7853981633974483));
  CHECK(c.dt == 0.02);
  CHECK(c.n_k == 400);
  CHECK(c.max_imag_energy == 1.0);
}

TEST_CASE("round trip through the normalized form") {
  RunConfig c = parse_config(R"({"delta": -0.15, "Delta": 0.05, "command": "evolve",
                                 "protocol": "erf", "erf_scale": 0.003, "n_cells": 120})");
  const std::string text = serialize_config(c);
  const RunConfig back = parse_config(text);
  CHECK(back == c);
  CHECK(serialize_config(back) == text);
}

TEST_CASE("missing and unknown fields") {
  try {
    parse_config(R"({"delta": 0.15})");
    FAIL("expected an error");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("'Delta'") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_config(R"({"delta": 0.15, "Delta": 0.1, "beta": 1})"), ValidationError);
  CHECK_THROWS_AS(parse_config(R"({"delta": "x", "Delta": 0.1})"), ValidationError);
  CHECK_THROWS_AS(parse_config(R"({"delta": 0.1, "Delta": 0.1, "n_cells": 2.5})"), ValidationError);
  CHECK_THROWS_AS(parse_config(R"({"delta": 0.1, "Delta": 0.1, "n_k": 401})"), ValidationError);
  CHECK_THROWS_AS(parse_config(R"({"delta": 0.1, "Delta": 0.1, "command": "plot"})"),
                  ValidationError);
  CHECK_THROWS_AS(parse_config(R"({"delta": 0.1, "Delta": 0.1, "width": 0})"), ValidationError);
}

TEST_CASE("parse errors carry the line") {
  try {
    parse_config("{\n  \"delta\": 0.15,\n  \"Delta\": ,\n}");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
  CHECK_THROWS_AS(parse_config("[1, 2]"), ParseError);
}

TEST_CASE("numeric overrides") {
  RunConfig c = parse_config(R"({"delta": 0.15, "Delta": 0.1})");
  set_numeric_field(c, "Delta", 0.12);
  set_numeric_field(c, "n_cells", 99.6);
  CHECK(c.Delta == 0.12);
  CHECK(c.n_cells == 100);
  CHECK_THROWS_AS(set_numeric_field(c, "command", 1.0), ValidationError);
  CHECK_THROWS_AS(set_numeric_field(c, "nope", 1.0), ValidationError);
}

TEST_CASE("csv formatting") {
  CHECK(format_number(0.1) == "0.10000000000000001");
  CHECK(format_number(std::nan("")) == "nan");
  CHECK(format_number(-1.0 / 0.0) == "-inf");
  CHECK(csv_quote("plain") == "plain");
  CHECK(csv_quote("a,b") == "\"a,b\"");
  CHECK(csv_quote("say \"hi\"") == "\"say \"\"hi\"\"\"");
  const fs::path dir = scratch("csv");
  fs::create_directories(dir);
  {
    CsvWriter w((dir / "x.csv").string(), {"a", "b"});
    w.field(1).field("x,y").end_row();
  }
  CHECK(slurp(dir / "x.csv") == "a,b\r\n1,\"x,y\"\r\n");
  CHECK_THROWS_AS(CsvWriter((dir / "missing" / "x.csv").string(), {"a"}), IoError);
}

TEST_CASE("exit codes") {
  CHECK(exit_code_for(ValidationError("x")) == 2);
  CHECK(exit_code_for(ParseError("x", 1)) == 2);
  CHECK(exit_code_for(ProtocolTimingError("x")) == 2);
  CHECK(exit_code_for(SpectrumNotRealError("x")) == 3);
  CHECK(exit_code_for(StepTooLargeError("x")) == 3);
  CHECK(exit_code_for(IoError("x")) == 4);
  CHECK(exit_code_for(std::runtime_error("x")) == 1);
}

TEST_CASE("zak run writes its artifacts") {
  RunConfig c = parse_config(R"({"delta": 0.15, "Delta": 0.1, "command": "zak"})");
  c.output_dir = scratch("zak").string();
  const RunSummary s = run(c);
  CHECK(fs::exists(fs::path(c.output_dir) / "zak.csv"));
  CHECK(fs::exists(fs::path(c.output_dir) / "manifest.txt"));
  const std::string manifest = slurp(fs::path(c.output_dir) / "manifest.txt");
  CHECK(manifest.find("xi_plus = 0.8280297594") != std::string::npos);
}

TEST_CASE("CLI output is deterministic") {
  const fs::path dir = scratch("cli");
  fs::create_directories(dir);
  std::ofstream(dir / "c.json") << R"({"command": "spectrum", "delta": 0.15, "Delta": 0.1, "n_cells": 20})";
  const std::string cfg = (dir / "c.json").string();
  CHECK(run_cli("--config " + cfg + " --out " + (dir / "a").string()) == 0);
  CHECK(run_cli("--config " + cfg + " --out " + (dir / "b").string()) == 0);
  for (const char* f : {"spectrum.csv", "ring_eigenvalues.csv", "manifest.txt"})
    CHECK(slurp(dir / "a" / f) == slurp(dir / "b" / f));
}

TEST_CASE("CLI exit codes") {
  const fs::path dir = scratch("cli_codes");
  fs::create_directories(dir);
  std::ofstream(dir / "bad.json") << "{\n\"delta\": 0.15,\n";
  std::ofstream(dir / "broken.json") << R"({"command": "zak", "delta": 0.15, "Delta": 0.3})";
  const std::string out = " --out " + (dir / "o").string();
  CHECK(run_cli("--config " + (dir / "bad.json").string() + out) == 2);
  CHECK(run_cli("--config " + (dir / "none.json").string() + out) == 4);
  CHECK(run_cli("--config " + (dir / "broken.json").string() + out) == 3);
  CHECK(run_cli("--bogus") == 2);
}

}  // TEST_SUITE
