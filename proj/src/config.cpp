#include "nhzak/config.hpp"

#include <cmath>
#include <set>
#include <variant>
#include <vector>

#include <json.hpp>

#include "nhzak/errors.hpp"

namespace nhzak {

namespace {

using Json = nlohmann::ordered_json;
using Member = std::variant<double RunConfig::*, int RunConfig::*, std::string RunConfig::*>;

struct Field {
  const char* name;
  Member member;
  bool required = false;
};

const std::vector<Field>& fields() {
  static const std::vector<Field> f = {
      {"command", &RunConfig::command},
      {"delta", &RunConfig::delta, true},
      {"Delta", &RunConfig::Delta, true},
      {"flux", &RunConfig::flux},
      {"n_cells", &RunConfig::n_cells},
      {"n_a", &RunConfig::n_a},
      {"n_b", &RunConfig::n_b},
      {"n_d", &RunConfig::n_d},
      {"packet", &RunConfig::packet},
      {"band", &RunConfig::band},
      {"center", &RunConfig::center},
      {"width", &RunConfig::width},
      {"momentum", &RunConfig::momentum},
      {"protocol", &RunConfig::protocol},
      {"rate", &RunConfig::rate},
      {"erf_scale", &RunConfig::erf_scale},
      {"erf_center", &RunConfig::erf_center},
      {"flux_start", &RunConfig::flux_start},
      {"flux_end", &RunConfig::flux_end},
      {"t_start", &RunConfig::t_start},
      {"timing", &RunConfig::timing},
      {"trigger_site", &RunConfig::trigger_site},
      {"total_time", &RunConfig::total_time},
      {"max_imag_energy", &RunConfig::max_imag_energy},
      {"dt", &RunConfig::dt},
      {"n_k", &RunConfig::n_k},
      {"n_quad", &RunConfig::n_quad},
      {"tolerance", &RunConfig::tolerance},
      {"sample_interval", &RunConfig::sample_interval},
      {"snapshot_interval", &RunConfig::snapshot_interval},
      {"output_dir", &RunConfig::output_dir},
  };
  return f;
}

const Field* find_field(const std::string& name) {
  for (const auto& f : fields())
    if (name == f.name) return &f;
  return nullptr;
}

int line_of(std::string_view text, std::size_t byte) {
  int line = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i)
    if (text[i] == '\n') ++line;
  return line;
}

void assign(RunConfig& c, const Field& f, const Json& v) {
  const std::string name = f.name;
  std::visit(
      [&](auto member) {
        using T = std::remove_reference_t<decltype(c.*member)>;
        if constexpr (std::is_same_v<T, std::string>) {
          if (!v.is_string()) throw ValidationError("field '" + name + "' must be a string");
          c.*member = v.get<std::string>();
        } else if constexpr (std::is_same_v<T, int>) {
          if (!v.is_number()) throw ValidationError("field '" + name + "' must be an integer");
          const double x = v.get<double>();
          if (x != std::floor(x) || std::abs(x) > 1e9)
            throw ValidationError("field '" + name + "' must be an integer");
          c.*member = static_cast<int>(x);
        } else {
          if (!v.is_number()) throw ValidationError("field '" + name + "' must be a number");
          c.*member = v.get<double>();
        }
      },
      f.member);
}

void require(bool ok, const std::string& field, const std::string& why) {
  if (!ok) throw ValidationError("field '" + field + "' " + why);
}

}  // namespace

RunConfig parse_config(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    const int line = line_of(text, e.byte > 0 ? e.byte - 1 : 0);
    throw ParseError("config line " + std::to_string(line) + ": " + e.what(), line);
  }
  if (!doc.is_object()) throw ParseError("config must be a JSON object", 1);

  RunConfig c;
  std::set<std::string> seen;
  for (const auto& [key, value] : doc.items()) {
    const Field* f = find_field(key);
    if (!f) throw ValidationError("unknown field '" + key + "'");
    assign(c, *f, value);
    seen.insert(key);
  }
  for (const auto& f : fields())
    if (f.required && !seen.count(f.name))
      throw ValidationError(std::string("missing required field '") + f.name + "'");
  validate(c);
  return c;
}

std::string serialize_config(const RunConfig& c) {
  Json doc = Json::object();
  for (const auto& f : fields()) {
    std::visit([&](auto member) { doc[f.name] = c.*member; }, f.member);
  }
  return doc.dump(2) + "\n";
}

void set_numeric_field(RunConfig& c, const std::string& key, double value) {
  const Field* f = find_field(key);
  if (!f) throw ValidationError("unknown field '" + key + "'");
  if (std::holds_alternative<std::string RunConfig::*>(f->member))
    throw ValidationError("field '" + key + "' is not numeric");
  if (auto m = std::get_if<int RunConfig::*>(&f->member))
    c.**m = static_cast<int>(std::lround(value));
  else
    c.*std::get<double RunConfig::*>(f->member) = value;
}

void validate(const RunConfig& c) {
  static const std::set<std::string> commands = {"spectrum", "zak", "evolve", "scatter",
                                                 "network-check"};
  require(commands.count(c.command) > 0, "command",
          "must be one of spectrum, zak, evolve, scatter, network-check");
  for (const auto& f : fields()) {
    if (auto m = std::get_if<double RunConfig::*>(&f.member))
      require(std::isfinite(c.**m), f.name, "must be finite");
  }
  require(c.n_cells >= 2, "n_cells", "must be >= 2");
  require(c.n_a >= 1, "n_a", "must be >= 1");
  require(c.n_b >= 1, "n_b", "must be >= 1");
  require(c.n_d >= 1, "n_d", "must be >= 1");
  require(c.packet == "band" || c.packet == "gaussian", "packet", "must be band or gaussian");
  require(c.band == "+" || c.band == "-", "band", "must be + or -");
  require(c.width > 0.0, "width", "must be > 0");
  require(c.protocol == "linear" || c.protocol == "erf", "protocol", "must be linear or erf");
  require(c.protocol != "linear" || c.rate > 0.0, "rate", "must be > 0");
  require(c.protocol != "erf" || c.erf_scale > 0.0, "erf_scale", "must be > 0");
  require(c.flux_end >= c.flux_start, "flux_end", "must be >= flux_start");
  require(c.timing == "before_arrival" || c.timing == "during_transit", "timing",
          "must be before_arrival or during_transit");
  require(c.total_time >= 0.0, "total_time", "must be >= 0");
  require(c.dt > 0.0, "dt", "must be > 0");
  require(c.n_k >= 16 && c.n_k % 2 == 0, "n_k", "must be even and >= 16");
  require(c.n_quad >= 2, "n_quad", "must be >= 2");
  require(c.tolerance > 0.0, "tolerance", "must be > 0");
  require(c.sample_interval > 0.0, "sample_interval", "must be > 0");
  require(c.snapshot_interval >= 0.0, "snapshot_interval", "must be >= 0");
  require(c.max_imag_energy >= 0.0, "max_imag_energy", "must be >= 0");
  require(!c.output_dir.empty(), "output_dir", "must not be empty");
}

Band parse_band(const std::string& s) {
  if (s == "+") return Band::plus;
  if (s == "-") return Band::minus;
  throw ValidationError("band must be + or -");
}

SshRingSpec ring_spec(const RunConfig& c) { return {c.n_cells, c.delta, c.Delta, c.flux}; }

NetworkSpec network_spec(const RunConfig& c) {
  return {c.n_a, c.n_b, c.n_d, c.delta, c.Delta, c.flux};
}

WavepacketSpec wavepacket_spec(const RunConfig& c) { return {c.center, c.width, c.momentum}; }

FluxProtocol flux_protocol(const RunConfig& c) {
  FluxProtocol p;
  p.kind = c.protocol == "erf" ? ProtocolKind::erf : ProtocolKind::linear;
  p.rate = c.rate;
  p.erf_scale = c.erf_scale;
  p.erf_center = c.erf_center;
  p.flux_start = c.flux_start;
  p.flux_end = c.flux_end;
  p.t_start = c.t_start;
  return p;
}

ScatterScenario scatter_scenario(const RunConfig& c) {
  ScatterScenario s;
  s.network = network_spec(c);
  s.wavepacket = wavepacket_spec(c);
  s.protocol = flux_protocol(c);
  s.timing = c.timing == "during_transit" ? ImpulseTiming::during_transit
                                          : ImpulseTiming::before_arrival;
  s.total_time = c.total_time;
  s.trigger_site = c.trigger_site;
  s.max_imag_energy = c.max_imag_energy;
  s.sample_interval = c.sample_interval;
  return s;
}

}  // namespace nhzak
