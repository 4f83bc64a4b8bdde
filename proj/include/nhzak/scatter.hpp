#pragma once

#include <utility>
#include <vector>

#include "nhzak/dynamics.hpp"
#include "nhzak/lattice.hpp"

namespace nhzak {

enum class ImpulseTiming { before_arrival, during_transit };

const char* timing_name(ImpulseTiming t);

struct ScatterScenario {
  NetworkSpec network;        // flux_per_bond is ignored, the protocol drives it
  WavepacketSpec wavepacket;  // center is a site of lead A
  FluxProtocol protocol;      // linear: t_start set here; erf: erf_center is relative to the trigger
  ImpulseTiming timing = ImpulseTiming::before_arrival;
  double total_time = 0.0;
  // during_transit: the impulse starts once prob_ring > 0.99 and the arm
  // centroid has reached this arm site. 0 means the arm midpoint N_B.
  double trigger_site = 0.0;
  double max_imag_energy = 1.0;
  bool diagnose_spectrum = true;  // dense diagonalization of H(0)
  double sample_interval = 1.0;
  void validate() const;
};

struct ScatterReport {
  std::vector<double> times;
  std::vector<double> prob_a, prob_ring, prob_d;
  std::vector<double> virtual_a_weight, virtual_b_weight;
  std::vector<double> dirac_norm;
  double transmission = 0.0;  // final prob_D
  double confinement = 0.0;   // final prob_ring
  double reflection = 0.0;    // final prob_A
  double impulse_start = 0.0;
  double impulse_end = 0.0;
  // Virtual chain b share of the ring weight when the impulse completes.
  double confined_share_at_impulse_end = 0.0;
  double max_imag_energy = 0.0;  // NaN when the diagnosis was skipped
  double arrival_time = 0.0;
  double predicted_transmit = 0.0;
  double predicted_confine = 0.0;
  double convergence_error = 0.0;
  StateVector final_state;
};

ScatterReport run_scenario(const ScatterScenario& s, double dt);

struct SplitCheck {
  StateVector upper;  // arm B1
  StateVector lower;  // arm B2
  Complex overlap;    // <upper|lower>
  double clone_fidelity = 0.0;
};

// Arm amplitudes of a network state, B1_j paired with B2_j.
SplitCheck split_state(const NetworkSpec& network, const StateVector& psi);

// Runs the scenario up to time t and splits the state there.
SplitCheck split_check(const ScatterScenario& s, double t, double dt);

// (transmit, confine) = (sinh², cosh²) / (sinh² + cosh²) of xi_+.
std::pair<double, double> confinement_prediction(double delta, double Delta);

// |d eps / dk| of the + band at k = π/2 (cell momentum), flux 0.
double group_velocity(double delta, double Delta);

// (2 N_A - N_c) / (2 v)
double arrival_time(const ScatterScenario& s);

}  // namespace nhzak
