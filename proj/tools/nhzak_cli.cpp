// Command-line front end: nhzak [command] --config run.json --out DIR
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "nhzak/errors.hpp"
#include "nhzak/run.hpp"

namespace {

struct Sweep {
  std::string key;
  double start = 0.0, stop = 0.0;
  int count = 0;
};

Sweep parse_sweep(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos) throw nhzak::ValidationError("--sweep expects key=start:stop:count");
  Sweep s;
  s.key = text.substr(0, eq);
  std::stringstream rest(text.substr(eq + 1));
  std::string a, b, c;
  if (!std::getline(rest, a, ':') || !std::getline(rest, b, ':') || !std::getline(rest, c))
    throw nhzak::ValidationError("--sweep expects key=start:stop:count");
  try {
    s.start = std::stod(a);
    s.stop = std::stod(b);
    s.count = std::stoi(c);
  } catch (const std::exception&) {
    throw nhzak::ValidationError("--sweep has a non-numeric range: " + text);
  }
  if (s.count < 1) throw nhzak::ValidationError("--sweep count must be >= 1");
  return s;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw nhzak::IoError("cannot read config " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string sweep_dir(int i) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "sweep_%03d", i);
  return buf;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Non-Hermitian SSH lattice toolkit: Zak phases, flux-driven dynamics, scattering"};
  std::string command, config_path, out_dir, sweep_text;
  double dt = 0.0;
  int nk = 0;
  app.add_option("command", command, "spectrum | zak | evolve | scatter | network-check (overrides the config)");
  app.add_option("--config", config_path, "JSON run configuration")->required();
  app.add_option("--out", out_dir, "output directory (overrides output_dir)");
  app.add_option("--dt", dt, "time step (overrides dt)");
  app.add_option("--nk", nk, "k-grid size (overrides n_k)");
  app.add_option("--sweep", sweep_text, "key=start:stop:count, one run per point");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    nhzak::RunConfig cfg = nhzak::parse_config(read_file(config_path));
    if (!command.empty()) cfg.command = command;
    if (!out_dir.empty()) cfg.output_dir = out_dir;
    if (dt > 0.0) cfg.dt = dt;
    if (nk > 0) cfg.n_k = nk;
    nhzak::validate(cfg);

    if (sweep_text.empty()) {
      const auto summary = nhzak::run(cfg);
      for (const auto& f : summary.files) std::cout << cfg.output_dir << '/' << f << '\n';
      return 0;
    }

    const Sweep sw = parse_sweep(sweep_text);
    const std::string base = cfg.output_dir;
    std::filesystem::create_directories(base);
    nhzak::CsvWriter index(base + "/sweep.csv", {"index", sw.key, "output_dir"});
    for (int i = 0; i < sw.count; ++i) {
      const double v = sw.count == 1 ? sw.start : sw.start + (sw.stop - sw.start) * i / (sw.count - 1);
      nhzak::RunConfig point = cfg;
      nhzak::set_numeric_field(point, sw.key, v);
      point.output_dir = base + "/" + sweep_dir(i);
      nhzak::validate(point);
      nhzak::run(point);
      index.field(i).field(v).field(sweep_dir(i)).end_row();
      std::cout << point.output_dir << '\n';
    }
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return nhzak::exit_code_for(e);
  }
}
