#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "nhzak/bloch.hpp"
#include "nhzak/lattice.hpp"

namespace nhzak {

struct WavepacketSpec {
  double center = 0.0;    // site index N_c (1-based)
  double width = 0.05;    // alpha
  double momentum = 0.0;  // k0
  void validate() const;
};

struct Wavepacket {
  StateVector amplitudes;
  double boundary_amplitude = 0.0;
  bool tails_truncated() const { return boundary_amplitude >= 1e-8; }
};

// exp(-alpha² (l - N_c)²) exp(i k0 l) on sites l = 1..length, Dirac-normalized.
Wavepacket make_gwp(const WavepacketSpec& spec, int segment_length);

// Gaussian superposition of ring Bloch eigenstates of one band:
// sum_k exp(-(k - k0)²/(4 alpha²)) exp(-i k N_c / 2) rho_band(k), with k the
// cell momentum and N_c a site index. Normalized.
StateVector make_band_gwp(const SshRingSpec& ring, Band band, const WavepacketSpec& spec);

struct BandWeights {
  double plus = 0.0;
  double minus = 0.0;
};
// Biorthogonal projection of a ring state onto the two bands, normalized to sum 1.
BandWeights band_weights(const SshRingSpec& ring, const StateVector& psi);

enum class ProtocolKind { linear, erf };

struct FluxProtocol {
  ProtocolKind kind = ProtocolKind::linear;
  double rate = 0.0;        // beta, linear only
  double erf_scale = 1.0;   // s
  double erf_center = 0.0;  // t0, absolute time
  double flux_start = 0.0;
  double flux_end = kPi;
  double t_start = 0.0;     // linear ramp begins here

  double flux(double t) const;
  // Time after which the flux sits at flux_end (within 1e-8 for erf).
  double completion_time() const;
  void validate() const;
};

const char* protocol_name(ProtocolKind k);

struct PhaseLedger {
  double dynamic_phase = 0.0;  // alpha = -∫ eps dt
  Complex adiabatic_phase;     // gamma
  double amplification = 0.0;  // xi = -Im gamma
};

struct EvolveOptions {
  double sample_interval = 1.0;
  bool keep_states = false;
  bool ring_center = false;
  bool check_convergence = true;
  double tolerance = 1e-6;
  // Called on every sample with (t, psi); may be used for custom observables.
  std::function<void(double, const StateVector&)> observer;
};

struct EvolutionResult {
  std::vector<double> times;
  std::vector<StateVector> states;
  std::vector<double> dirac_norm;
  std::vector<double> center_traj;
  StateVector final_state;
  PhaseLedger phase_ledger;
  double dt = 0.0;                 // step actually used (T split into equal steps)
  double convergence_error = 0.0;  // relative change of the final state under dt/2
};

// Fixed-step RK4 on i dpsi/dt = H(flux(t)) psi. No renormalization.
EvolutionResult evolve(const LatticeModel& model, const FluxProtocol& protocol,
                       const StateVector& psi0, double T, double dt,
                       const EvolveOptions& options = {});

// Plain propagation from t0 to t0 + T without sampling or checks; returns psi(t0 + T).
StateVector propagate(const LatticeModel& model, const FluxProtocol& protocol, StateVector psi,
                      double t0, double T, double dt);

// <a|b> / (|a| |b|).
Complex fidelity(const StateVector& a, const StateVector& b);

double dirac_norm(const StateVector& psi);

// Mean 1-based site index. On a ring the circular mean is used and placed on
// the branch nearest previous.
double center_of_mass(const StateVector& psi, bool ring, std::optional<double> previous = {});

// x0 + [eps(k_c, phi) - eps(k_c, 0)] / beta, in sites.
std::vector<double> predict_trajectory(const SshRingSpec& ring, double k_c, double beta, double x0,
                                       const std::vector<double>& fluxes, Band band = Band::plus);

// Semiclassical center for any protocol: dx/dt = d eps(k_c, phi)/d phi at
// phi = protocol.flux(t), integrated over the given sample times. Reduces to
// predict_trajectory for a linear ramp starting at t = 0.
std::vector<double> integrate_trajectory(const SshRingSpec& ring, double k_c,
                                         const FluxProtocol& protocol, double x0,
                                         const std::vector<double>& times, Band band = Band::plus);

// Ledger for a packet at k_c driven by the protocol over [0, T].
PhaseLedger ring_phase_ledger(const SshRingSpec& ring, double k_c, const FluxProtocol& protocol,
                              double T, Band band = Band::plus, int n_quad = 4096);

}  // namespace nhzak
