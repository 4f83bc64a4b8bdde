#pragma once

#include <string>
#include <string_view>

#include "nhzak/dynamics.hpp"
#include "nhzak/scatter.hpp"

namespace nhzak {

// Everything one CLI run needs. The on-disk form is a flat JSON object whose
// keys are the field names below.
struct RunConfig {
  std::string command = "zak";  // spectrum | zak | evolve | scatter | network-check

  double delta = 0.0;
  double Delta = 0.0;
  double flux = 0.0;  // static flux per bond for spectrum/zak/network-check

  int n_cells = 250;  // ring
  int n_a = 100, n_b = 100, n_d = 100;

  std::string packet = "band";  // band (ring Bloch superposition) | gaussian (real space)
  std::string band = "+";
  double center = 250.0;
  double width = 0.05;
  double momentum = kPi / 4.0;

  std::string protocol = "linear";
  double rate = 0.01;
  double erf_scale = 0.01;
  double erf_center = 0.0;
  double flux_start = 0.0;
  double flux_end = kPi;
  double t_start = 0.0;

  std::string timing = "before_arrival";
  double trigger_site = 0.0;
  double total_time = 0.0;  // 0: protocol completion time (evolve only)
  double max_imag_energy = 1.0;

  double dt = 0.02;
  int n_k = 400;
  int n_quad = 4096;
  double tolerance = 1e-6;
  double sample_interval = 1.0;
  double snapshot_interval = 0.0;  // 0: no site snapshots

  std::string output_dir = "out";

  bool operator==(const RunConfig&) const = default;
};

// Throws ParseError (with line) on malformed JSON and ValidationError naming
// the field for unknown keys, wrong types, missing or out-of-range values.
RunConfig parse_config(std::string_view text);

// Normalized form: every field, fixed key order.
std::string serialize_config(const RunConfig& c);

void validate(const RunConfig& c);

// Overwrites one numeric field by name; used by parameter sweeps.
void set_numeric_field(RunConfig& c, const std::string& key, double value);

// Builders shared by the commands and tests.
SshRingSpec ring_spec(const RunConfig& c);
NetworkSpec network_spec(const RunConfig& c);
WavepacketSpec wavepacket_spec(const RunConfig& c);
FluxProtocol flux_protocol(const RunConfig& c);
ScatterScenario scatter_scenario(const RunConfig& c);
Band parse_band(const std::string& s);

}  // namespace nhzak
