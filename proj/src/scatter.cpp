#include "nhzak/scatter.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <tuple>

#include "nhzak/errors.hpp"
#include "nhzak/zak.hpp"

namespace nhzak {

const char* timing_name(ImpulseTiming t) {
  return t == ImpulseTiming::before_arrival ? "before_arrival" : "during_transit";
}

void ScatterScenario::validate() const {
  network.validate();
  wavepacket.validate();
  protocol.validate();
  if (!(total_time > 0.0)) throw ValidationError("total_time must be > 0");
  if (wavepacket.center < 1.0 || wavepacket.center > 2 * network.n_a)
    throw ValidationError("wavepacket center must lie on lead A");
  if (trigger_site < 0.0 || trigger_site > 2 * network.n_b)
    throw ValidationError("trigger_site must lie on the arm");
  if (!(max_imag_energy >= 0.0)) throw ValidationError("max_imag_energy must be >= 0");
}

double group_velocity(double delta, double Delta) {
  const ModelSpec m{delta, Delta, 0.0};
  const double h = 1e-4;
  const double k = 0.5 * kPi;
  const double d = (band_energy(m, k + h, Band::plus) - band_energy(m, k - h, Band::plus)).real();
  return std::abs(d / (2.0 * h));
}

double arrival_time(const ScatterScenario& s) {
  return (2.0 * s.network.n_a - s.wavepacket.center) /
         (2.0 * group_velocity(s.network.delta, s.network.Delta));
}

std::pair<double, double> confinement_prediction(double delta, double Delta) {
  const double xi = amplification_exponent(delta, Delta);
  const double sh = std::sinh(xi), ch = std::cosh(xi);
  const double total = sh * sh + ch * ch;
  return {sh * sh / total, ch * ch / total};
}

namespace {

struct Regions {
  double a, ring, d, total;
};

Regions regions(const NetworkLayout& l, const StateVector& psi) {
  const double a = psi.segment(l.offset_a, l.length_a).squaredNorm();
  const double ring = psi.segment(l.offset_b1, 2 * l.length_b).squaredNorm();
  const double d = psi.segment(l.offset_d, l.length_d).squaredNorm();
  const double total = a + ring + d;
  if (total == 0.0) throw ZeroNormError("network state vanished");
  return {a / total, ring / total, d / total, total};
}

double arm_centroid(const NetworkLayout& l, const StateVector& psi) {
  double w = 0.0, x = 0.0;
  for (int j = 1; j <= l.length_b; ++j) {
    const double p = std::norm(psi[l.offset_b1 + j - 1]) + std::norm(psi[l.offset_b2 + j - 1]);
    w += p;
    x += p * j;
  }
  return w > 0.0 ? x / w : 0.0;
}

struct Prepared {
  LatticeModel model;
  NetworkLayout layout;
  StateVector psi0;
  FluxProtocol protocol;
  double impulse_start = 0.0;
  double arrival = 0.0;
};

Prepared prepare(const ScatterScenario& s, double dt) {
  s.validate();
  NetworkSpec spec = s.network;
  spec.flux_per_bond = 0.0;
  Prepared p{network_model(spec), network_layout(spec), {}, s.protocol, 0.0, arrival_time(s)};
  const Wavepacket g = make_gwp(s.wavepacket, p.layout.length_a);
  p.psi0 = StateVector::Zero(p.layout.dimension);
  p.psi0.segment(p.layout.offset_a, p.layout.length_a) = g.amplitudes;

  const double sigma = 2.0 / s.wavepacket.width;
  const double lead_time = std::max(0.0, p.arrival - sigma / (2.0 * group_velocity(spec.delta, spec.Delta)));
  if (s.timing == ImpulseTiming::before_arrival) {
    p.impulse_start = p.protocol.kind == ProtocolKind::linear
                          ? p.protocol.t_start
                          : p.protocol.erf_center - 4.0 / p.protocol.erf_scale;
    if (1.2 * p.protocol.completion_time() > lead_time) {
      throw ProtocolTimingError("flux impulse completes at t = " +
                                std::to_string(p.protocol.completion_time()) +
                                " but the packet front reaches the splitter near t = " +
                                std::to_string(lead_time) + " (margin 1.2)");
    }
    return p;
  }

  // during_transit: flux-free run until the packet sits inside the arms.
  const double depth = s.trigger_site > 0.0 ? s.trigger_site : static_cast<double>(spec.n_b);
  const FluxProtocol off{ProtocolKind::linear, 1.0, 1.0, 0.0, 0.0, 0.0, 0.0};
  StateVector psi = p.psi0;
  const int n = std::max(1, static_cast<int>(std::ceil(s.total_time / dt - 1e-9)));
  const double h = s.total_time / n;
  const int chunk = std::max(1, static_cast<int>(std::lround(1.0 / h)));
  double t = 0.0;
  bool found = false;
  for (int step = 0; step < n; step += chunk) {
    const int m = std::min(chunk, n - step);
    psi = propagate(p.model, off, psi, t, m * h, h);
    t += m * h;
    if (regions(p.layout, psi).ring > 0.99 && arm_centroid(p.layout, psi) >= depth) {
      found = true;
      break;
    }
  }
  if (!found) {
    throw ProtocolTimingError("packet never settled in the ring before total_time = " +
                              std::to_string(s.total_time));
  }
  if (t < p.arrival / 1.2)
    throw ProtocolTimingError("trigger fired before the estimated arrival time");
  p.impulse_start = t;
  if (p.protocol.kind == ProtocolKind::linear)
    p.protocol.t_start = t;
  else
    p.protocol.erf_center = t + p.protocol.erf_center;
  if (p.protocol.completion_time() > s.total_time) {
    throw ProtocolTimingError("impulse ends at t = " + std::to_string(p.protocol.completion_time()) +
                              " after total_time");
  }
  return p;
}

}  // namespace

ScatterReport run_scenario(const ScatterScenario& s, double dt) {
  Prepared p = prepare(s, dt);
  ScatterReport rep;
  rep.arrival_time = p.arrival;
  rep.impulse_start = p.impulse_start;
  rep.impulse_end = p.protocol.completion_time();
  rep.max_imag_energy = std::numeric_limits<double>::quiet_NaN();
  if (s.diagnose_spectrum) {
    const Eigen::VectorXcd ev = eigenvalues(p.model.matrix(0.0));
    rep.max_imag_energy = ev.imag().cwiseAbs().maxCoeff();
    if (rep.max_imag_energy > s.max_imag_energy) {
      throw SpectrumNotRealError("network max |Im eps| = " + std::to_string(rep.max_imag_energy) +
                                 " exceeds the bound " + std::to_string(s.max_imag_energy));
    }
  }
  if (std::abs(s.network.Delta) < std::abs(s.network.delta)) {
    std::tie(rep.predicted_transmit, rep.predicted_confine) =
        confinement_prediction(s.network.delta, s.network.Delta);
  } else {
    rep.predicted_transmit = rep.predicted_confine = std::numeric_limits<double>::quiet_NaN();
  }

  bool share_taken = false;
  EvolveOptions opt;
  opt.sample_interval = s.sample_interval;
  opt.observer = [&](double t, const StateVector& psi) {
    const Regions r = regions(p.layout, psi);
    rep.times.push_back(t);
    rep.prob_a.push_back(r.a);
    rep.prob_ring.push_back(r.ring);
    rep.prob_d.push_back(r.d);
    rep.dirac_norm.push_back(r.total);
    const ArmModes modes = arm_virtual_modes(p.layout, psi, p.protocol.flux(t));
    const double wa = modes.a.squaredNorm(), wb = modes.b.squaredNorm();
    const double w = wa + wb;
    rep.virtual_a_weight.push_back(w > 0.0 ? wa / w : 0.0);
    rep.virtual_b_weight.push_back(w > 0.0 ? wb / w : 0.0);
    if (!share_taken && t >= rep.impulse_end) {
      rep.confined_share_at_impulse_end = rep.virtual_b_weight.back();
      share_taken = true;
    }
  };
  const EvolutionResult res = evolve(p.model, p.protocol, p.psi0, s.total_time, dt, opt);
  rep.convergence_error = res.convergence_error;
  rep.final_state = res.final_state;
  rep.transmission = rep.prob_d.back();
  rep.confinement = rep.prob_ring.back();
  rep.reflection = rep.prob_a.back();
  return rep;
}

SplitCheck split_state(const NetworkSpec& network, const StateVector& psi) {
  const NetworkLayout l = network_layout(network);
  if (psi.size() != l.dimension) throw ValidationError("state does not match network");
  if (regions(l, psi).ring <= 0.99)
    throw PacketNotInRingError("ring holds only " + std::to_string(regions(l, psi).ring) +
                               " of the probability");
  SplitCheck c;
  c.upper = psi.segment(l.offset_b1, l.length_b);
  c.lower = psi.segment(l.offset_b2, l.length_b);
  c.overlap = c.upper.dot(c.lower);
  c.clone_fidelity = std::abs(c.overlap) / (c.upper.norm() * c.lower.norm());
  return c;
}

SplitCheck split_check(const ScatterScenario& s, double t, double dt) {
  const Prepared p = prepare(s, dt);
  const StateVector psi = propagate(p.model, p.protocol, p.psi0, 0.0, t, dt);
  return split_state(s.network, psi);
}

}  // namespace nhzak
