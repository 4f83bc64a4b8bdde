#pragma once

#include <iosfwd>
#include <vector>

#include "nhzak/types.hpp"

namespace nhzak {

// H[row, col] += amplitude * e^{i winding * flux}, plus the conjugate-phase
// partner at [col, row]. Amplitudes are real; flux enters only as a phase.
struct Bond {
  int row = 0;
  int col = 0;
  double amplitude = 0.0;
  int winding = 0;
};

struct HamiltonianMatrix {
  Eigen::MatrixXcd entries;
  int dimension() const { return static_cast<int>(entries.rows()); }
};

// Flux-parametrized tight-binding model. Sites are 0-based here; physical site
// j of a segment sits at offset + j - 1.
class LatticeModel {
 public:
  explicit LatticeModel(int n_sites);

  int dimension() const { return static_cast<int>(onsite_.size()); }
  void set_onsite(int site, Complex value);
  void add_bond(int row, int col, double amplitude, int winding);

  const std::vector<Complex>& onsite() const { return onsite_; }
  const std::vector<Bond>& bonds() const { return bonds_; }

  HamiltonianMatrix matrix(double flux) const;
  // out = H(flux) in; out is resized.
  void apply(double flux, const StateVector& in, StateVector& out) const;
  double max_abs_entry() const;

 private:
  std::vector<Complex> onsite_;
  std::vector<Bond> bonds_;
};

struct SshRingSpec {
  int n_cells = 2;
  double delta = 0.0;
  double Delta = 0.0;
  double flux_per_bond = 0.0;
  void validate() const;
};

struct NetworkSpec {
  int n_a = 1;
  int n_b = 1;
  int n_d = 1;
  double delta = 0.0;
  double Delta = 0.0;
  double flux_per_bond = 0.0;
  void validate() const;
};

// Site layout [A | B1 | B2 | D].
struct NetworkLayout {
  int offset_a, offset_b1, offset_b2, offset_d;
  int length_a, length_b, length_d;
  int dimension;
};

NetworkLayout network_layout(const NetworkSpec& spec);

// Open SSH chain of n_sites, on-site i Delta (-1)^j and bond j -> j+1 of
// -(1 + (-1)^j delta)/2 carrying the given flux winding.
void add_ssh_segment(LatticeModel& model, int offset, int n_sites, double delta, double Delta,
                     int winding);

LatticeModel ssh_ring_model(const SshRingSpec& spec);
HamiltonianMatrix build_ssh_ring(const SshRingSpec& spec);

LatticeModel network_model(const NetworkSpec& spec);
HamiltonianMatrix build_network(const NetworkSpec& spec);

double splitter_amplitude(double delta);

struct VirtualDecomposition {
  HamiltonianMatrix chain_a;  // A lead plus the symmetric arm mode, 2(N_A + N_B) sites
  HamiltonianMatrix chain_b;  // antisymmetric arm mode, 2 N_B sites
  HamiltonianMatrix chain_d;
  Complex t_ad, t_bd;
  // Block layout [a | b | d]; the couplings join the last site of a and b to d_1.
  HamiltonianMatrix assembled() const;
};

VirtualDecomposition virtual_decompose(const NetworkSpec& spec);

// Rows are virtual modes in [a | b | d] order, columns physical sites, so the
// virtual amplitudes of psi are u * psi and the virtual Hamiltonian is u H u^†.
struct BasisMap {
  Eigen::MatrixXcd u;
  int length_a, length_b, length_d;
};

BasisMap virtual_basis_map(const NetworkSpec& spec);

// Ring-arm amplitudes in the virtual basis at the given flux, without
// building U: first the a-modes on the arm, then the b-modes.
struct ArmModes {
  StateVector a, b;
};
ArmModes arm_virtual_modes(const NetworkLayout& layout, const StateVector& psi, double flux);

Eigen::VectorXcd eigenvalues(const HamiltonianMatrix& h);

// Largest distance between two spectra after greedy nearest matching.
double spectrum_distance(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b);

// Site reversal c_j -> c_{L-j+1}.
Eigen::MatrixXcd site_reversal(int n_sites);

// Non-zero entries as "row,col,re,im" lines with a header.
void write_triplets(std::ostream& os, const HamiltonianMatrix& h);

}  // namespace nhzak
