#include "nhzak/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nhzak/errors.hpp"
#include "nhzak/zak.hpp"

namespace nhzak {

void WavepacketSpec::validate() const {
  if (!(width > 0.0) || !std::isfinite(width)) throw ValidationError("width must be > 0");
  if (!std::isfinite(center) || !std::isfinite(momentum))
    throw ValidationError("wavepacket center and momentum must be finite");
}

Wavepacket make_gwp(const WavepacketSpec& spec, int segment_length) {
  spec.validate();
  if (spec.center < 1.0 || spec.center > segment_length)
    throw ValidationError("wavepacket center " + std::to_string(spec.center) +
                          " outside segment of length " + std::to_string(segment_length));
  Wavepacket w;
  w.amplitudes.resize(segment_length);
  const double a2 = spec.width * spec.width;
  for (int l = 1; l <= segment_length; ++l) {
    const double x = l - spec.center;
    w.amplitudes[l - 1] = std::exp(-a2 * x * x) * std::exp(kI * (spec.momentum * l));
  }
  const double norm = w.amplitudes.norm();
  if (norm == 0.0) throw ZeroNormError("wavepacket underflowed to zero");
  w.amplitudes /= norm;
  w.boundary_amplitude =
      std::max(std::abs(w.amplitudes[0]), std::abs(w.amplitudes[segment_length - 1]));
  return w;
}

namespace {

double wrap_angle(double x) { return x - 2.0 * kPi * std::floor((x + kPi) / (2.0 * kPi)); }

ModelSpec bloch_model(const SshRingSpec& ring) {
  return {ring.delta, ring.Delta, ring.flux_per_bond};
}

}  // namespace

StateVector make_band_gwp(const SshRingSpec& ring, Band band, const WavepacketSpec& spec) {
  ring.validate();
  spec.validate();
  const int N = ring.n_cells;
  const ModelSpec model = bloch_model(ring);
  StateVector psi = StateVector::Zero(2 * N);
  const double a2 = spec.width * spec.width;
  for (double kg : k_grid(N)) {
    const double dk = wrap_angle(kg - spec.momentum);
    const double k = spec.momentum + dk;
    const Complex g = std::exp(-dk * dk / (4.0 * a2)) * std::exp(-kI * (0.5 * k * spec.center));
    if (std::abs(g) < 1e-300) continue;
    const Spinor rho = eigenpair(build_field(model, k)).right(band);
    // Sublattice A of cell j sits at position j - 1/2, B at j (site l at l/2).
    for (int l = 1; l <= 2 * N; ++l)
      psi[l - 1] += g * rho[(l - 1) % 2] * std::exp(kI * (0.5 * k * l));
  }
  const double norm = psi.norm();
  if (norm == 0.0) throw ZeroNormError("band wavepacket is empty");
  return psi / norm;
}

BandWeights band_weights(const SshRingSpec& ring, const StateVector& psi) {
  ring.validate();
  const int N = ring.n_cells;
  if (psi.size() != 2 * N) throw ValidationError("state does not match ring size");
  const ModelSpec model = bloch_model(ring);
  double wp = 0.0, wm = 0.0;
  for (double k : k_grid(N)) {
    Spinor comp = Spinor::Zero();
    for (int l = 1; l <= 2 * N; ++l) comp[(l - 1) % 2] += psi[l - 1] * std::exp(-kI * (0.5 * k * l));
    const BiorthEigenpair e = eigenpair(build_field(model, k));
    wp += (e.chi_plus.dot(comp) * e.rho_plus).squaredNorm();
    wm += (e.chi_minus.dot(comp) * e.rho_minus).squaredNorm();
  }
  const double total = wp + wm;
  if (total == 0.0) throw ZeroNormError("state has no weight on the ring");
  return {wp / total, wm / total};
}

double FluxProtocol::flux(double t) const {
  if (kind == ProtocolKind::linear) {
    const double phi = flux_start + rate * (t - t_start);
    return std::clamp(phi, flux_start, flux_end);
  }
  return flux_start + 0.5 * (flux_end - flux_start) * (1.0 + std::erf(erf_scale * (t - erf_center)));
}

double FluxProtocol::completion_time() const {
  if (kind == ProtocolKind::linear) return t_start + (flux_end - flux_start) / rate;
  return erf_center + 4.0 / erf_scale;
}

void FluxProtocol::validate() const {
  if (!std::isfinite(flux_start) || !std::isfinite(flux_end) || flux_end < flux_start)
    throw ValidationError("protocol needs finite flux_start <= flux_end");
  if (kind == ProtocolKind::linear && !(rate > 0.0))
    throw ValidationError("linear protocol needs rate > 0");
  if (kind == ProtocolKind::erf && !(erf_scale > 0.0))
    throw ValidationError("erf protocol needs erf_scale > 0");
}

const char* protocol_name(ProtocolKind k) { return k == ProtocolKind::linear ? "linear" : "erf"; }

namespace {

struct Rk4 {
  const LatticeModel& model;
  const FluxProtocol& protocol;
  StateVector k1, k2, k3, k4, tmp;

  // rhs = -i H(t) y
  void rhs(double t, const StateVector& y, StateVector& out) {
    model.apply(protocol.flux(t), y, out);
    out *= -kI;
  }

  void step(double t, double dt, StateVector& psi) {
    rhs(t, psi, k1);
    tmp = psi + (0.5 * dt) * k1;
    rhs(t + 0.5 * dt, tmp, k2);
    tmp = psi + (0.5 * dt) * k2;
    rhs(t + 0.5 * dt, tmp, k3);
    tmp = psi + dt * k3;
    rhs(t + dt, tmp, k4);
    psi += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
};

int step_count(double T, double dt) {
  if (!(T >= 0.0) || !(dt > 0.0)) throw ValidationError("need T >= 0 and dt > 0");
  return std::max(1, static_cast<int>(std::ceil(T / dt - 1e-9)));
}

// Row-sum bound on |eps|.
double gershgorin_bound(const LatticeModel& model) {
  std::vector<double> row(static_cast<std::size_t>(model.dimension()), 0.0);
  for (int i = 0; i < model.dimension(); ++i) row[i] = std::abs(model.onsite()[i]);
  for (const Bond& b : model.bonds()) {
    row[b.row] += std::abs(b.amplitude);
    row[b.col] += std::abs(b.amplitude);
  }
  return *std::max_element(row.begin(), row.end());
}

}  // namespace

StateVector propagate(const LatticeModel& model, const FluxProtocol& protocol, StateVector psi,
                      double t0, double T, double dt) {
  const int n = step_count(T, dt);
  const double h = T / n;
  Rk4 rk{model, protocol, {}, {}, {}, {}, {}};
  for (int s = 0; s < n; ++s) rk.step(t0 + s * h, h, psi);
  return psi;
}

EvolutionResult evolve(const LatticeModel& model, const FluxProtocol& protocol,
                       const StateVector& psi0, double T, double dt, const EvolveOptions& opt) {
  protocol.validate();
  if (psi0.size() != model.dimension()) throw ValidationError("state does not match lattice");
  const double bound = gershgorin_bound(model);
  if (dt * bound > 0.05) {
    throw StepTooLargeError("dt * max|eps| = " + std::to_string(dt * bound) + " exceeds 0.05");
  }
  const int n = step_count(T, dt);
  const double h = T / n;
  const int stride = std::max(1, static_cast<int>(std::lround(opt.sample_interval / h)));

  EvolutionResult res;
  res.dt = h;
  StateVector psi = psi0;
  std::optional<double> prev;
  auto sample = [&](double t) {
    res.times.push_back(t);
    res.dirac_norm.push_back(psi.squaredNorm());
    const double x = center_of_mass(psi, opt.ring_center, prev);
    prev = x;
    res.center_traj.push_back(x);
    if (opt.keep_states) res.states.push_back(psi);
    if (opt.observer) opt.observer(t, psi);
  };

  Rk4 rk{model, protocol, {}, {}, {}, {}, {}};
  sample(0.0);
  for (int s = 0; s < n; ++s) {
    rk.step(s * h, h, psi);
    if ((s + 1) % stride == 0 || s + 1 == n) sample((s + 1) * h);
  }
  res.final_state = psi;

  if (opt.check_convergence) {
    const StateVector fine = propagate(model, protocol, psi0, 0.0, T, 0.5 * h);
    res.convergence_error = (fine - psi).norm() / fine.norm();
    if (!(res.convergence_error < opt.tolerance)) {
      throw StepTooLargeError("halving dt changed the final state by " +
                              std::to_string(res.convergence_error) + " (relative)");
    }
  }
  return res;
}

double dirac_norm(const StateVector& psi) { return psi.squaredNorm(); }

Complex fidelity(const StateVector& a, const StateVector& b) {
  if (a.size() != b.size()) throw ValidationError("fidelity of states with different sizes");
  const double na = a.norm(), nb = b.norm();
  if (na == 0.0 || nb == 0.0) throw ZeroNormError("fidelity of a zero state");
  return a.dot(b) / (na * nb);
}

double center_of_mass(const StateVector& psi, bool ring, std::optional<double> previous) {
  const double total = psi.squaredNorm();
  if (total == 0.0) throw ZeroNormError("center of mass of a zero state");
  const auto L = psi.size();
  if (!ring) {
    double x = 0.0;
    for (Eigen::Index i = 0; i < L; ++i) x += std::norm(psi[i]) * static_cast<double>(i + 1);
    return x / total;
  }
  Complex z = 0.0;
  for (Eigen::Index i = 0; i < L; ++i)
    z += std::norm(psi[i]) * std::exp(kI * (2.0 * kPi * static_cast<double>(i + 1) / L));
  const double len = static_cast<double>(L);
  double x = std::arg(z) * len / (2.0 * kPi);
  if (previous) {
    x += len * std::round((*previous - x) / len);
  } else if (x <= 0.0) {
    x += len;
  }
  return x;
}

std::vector<double> predict_trajectory(const SshRingSpec& ring, double k_c, double beta, double x0,
                                       const std::vector<double>& fluxes, Band band) {
  if (!(beta > 0.0)) throw ValidationError("beta must be > 0");
  ModelSpec m{ring.delta, ring.Delta, 0.0};
  const double e0 = band_energy(m, k_c, band).real();
  std::vector<double> x;
  x.reserve(fluxes.size());
  for (double phi : fluxes) {
    m.flux = phi;
    x.push_back(x0 + (band_energy(m, k_c, band).real() - e0) / beta);
  }
  return x;
}

std::vector<double> integrate_trajectory(const SshRingSpec& ring, double k_c,
                                         const FluxProtocol& protocol, double x0,
                                         const std::vector<double>& times, Band band) {
  ModelSpec m{ring.delta, ring.Delta, 0.0};
  auto velocity = [&](double t) {
    const double phi = protocol.flux(t), h = 1e-5;
    m.flux = phi + h;
    const double up = band_energy(m, k_c, band).real();
    m.flux = phi - h;
    return (up - band_energy(m, k_c, band).real()) / (2.0 * h);
  };
  std::vector<double> x;
  x.reserve(times.size());
  double pos = x0;
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (i > 0) {
      // Simpson on 16 panels per sample interval.
      const int n = 16;
      const double a = times[i - 1], h = (times[i] - a) / n;
      double sum = velocity(a) + velocity(times[i]);
      for (int j = 1; j < n; ++j) sum += (j % 2 ? 4.0 : 2.0) * velocity(a + j * h);
      pos += sum * h / 3.0;
    }
    x.push_back(pos);
  }
  return x;
}

PhaseLedger ring_phase_ledger(const SshRingSpec& ring, double k_c, const FluxProtocol& protocol,
                              double T, Band band, int n_quad) {
  PhaseLedger p;
  const double h = T / n_quad;
  ModelSpec m{ring.delta, ring.Delta, 0.0};
  double alpha = 0.0;
  for (int j = 0; j <= n_quad; ++j) {
    m.flux = protocol.flux(j * h);
    alpha += ((j == 0 || j == n_quad) ? 0.5 : 1.0) * band_energy(m, k_c, band).real();
  }
  p.dynamic_phase = -alpha * h;
  m.flux = protocol.flux(0.0);
  p.adiabatic_phase = adiabatic_phase(m, band, protocol.flux(T), n_quad, k_c).gamma;
  p.amplification = -p.adiabatic_phase.imag();
  return p;
}

}  // namespace nhzak
