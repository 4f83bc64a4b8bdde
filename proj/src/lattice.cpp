#include "nhzak/lattice.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <string>

#include "nhzak/errors.hpp"

namespace nhzak {

LatticeModel::LatticeModel(int n_sites) {
  if (n_sites < 1) throw ValidationError("lattice needs at least one site");
  onsite_.assign(static_cast<std::size_t>(n_sites), Complex(0.0));
}

void LatticeModel::set_onsite(int site, Complex value) { onsite_.at(site) = value; }

void LatticeModel::add_bond(int row, int col, double amplitude, int winding) {
  if (row < 0 || col < 0 || row >= dimension() || col >= dimension() || row == col)
    throw ValidationError("bond " + std::to_string(row) + "->" + std::to_string(col) +
                          " outside the lattice");
  bonds_.push_back({row, col, amplitude, winding});
}

HamiltonianMatrix LatticeModel::matrix(double flux) const {
  const int n = dimension();
  HamiltonianMatrix h{Eigen::MatrixXcd::Zero(n, n)};
  for (int i = 0; i < n; ++i) h.entries(i, i) = onsite_[i];
  for (const Bond& b : bonds_) {
    const Complex t = b.amplitude * std::exp(kI * (b.winding * flux));
    h.entries(b.row, b.col) += t;
    h.entries(b.col, b.row) += std::conj(t);
  }
  return h;
}

void LatticeModel::apply(double flux, const StateVector& in, StateVector& out) const {
  const int n = dimension();
  out.resize(n);
  for (int i = 0; i < n; ++i) out[i] = onsite_[i] * in[i];
  const Complex phase[3] = {std::exp(-kI * flux), Complex(1.0), std::exp(kI * flux)};
  for (const Bond& b : bonds_) {
    const Complex t = b.amplitude * phase[b.winding + 1];
    out[b.row] += t * in[b.col];
    out[b.col] += std::conj(t) * in[b.row];
  }
}

double LatticeModel::max_abs_entry() const {
  double m = 0.0;
  for (const auto& v : onsite_) m = std::max(m, std::abs(v));
  for (const auto& b : bonds_) m = std::max(m, std::abs(b.amplitude));
  return m;
}

void SshRingSpec::validate() const {
  if (n_cells < 2) throw ValidationError("n_cells must be >= 2");
  if (!std::isfinite(delta) || !std::isfinite(Delta) || !std::isfinite(flux_per_bond))
    throw ValidationError("ring parameters must be finite");
}

void NetworkSpec::validate() const {
  if (n_a < 1 || n_b < 1 || n_d < 1) throw ValidationError("segment lengths must be >= 1");
  if (!std::isfinite(delta) || !std::isfinite(Delta) || !std::isfinite(flux_per_bond))
    throw ValidationError("network parameters must be finite");
}

NetworkLayout network_layout(const NetworkSpec& s) {
  NetworkLayout l{};
  l.length_a = 2 * s.n_a;
  l.length_b = 2 * s.n_b;
  l.length_d = 2 * s.n_d;
  l.offset_a = 0;
  l.offset_b1 = l.length_a;
  l.offset_b2 = l.offset_b1 + l.length_b;
  l.offset_d = l.offset_b2 + l.length_b;
  l.dimension = l.offset_d + l.length_d;
  return l;
}

namespace {
double parity(int j) { return (j % 2 == 0) ? 1.0 : -1.0; }
double ssh_bond(int j, double delta) { return -0.5 * (1.0 + parity(j) * delta); }
}  // namespace

void add_ssh_segment(LatticeModel& m, int offset, int n_sites, double delta, double Delta,
                     int winding) {
  for (int j = 1; j <= n_sites; ++j) m.set_onsite(offset + j - 1, kI * (Delta * parity(j)));
  for (int j = 1; j < n_sites; ++j)
    m.add_bond(offset + j - 1, offset + j, ssh_bond(j, delta), winding);
}

LatticeModel ssh_ring_model(const SshRingSpec& spec) {
  spec.validate();
  const int L = 2 * spec.n_cells;
  LatticeModel m(L);
  add_ssh_segment(m, 0, L, spec.delta, spec.Delta, 1);
  m.add_bond(L - 1, 0, ssh_bond(L, spec.delta), 1);
  return m;
}

HamiltonianMatrix build_ssh_ring(const SshRingSpec& spec) {
  return ssh_ring_model(spec).matrix(spec.flux_per_bond);
}

double splitter_amplitude(double delta) { return -(1.0 + delta) / (2.0 * std::sqrt(2.0)); }

LatticeModel network_model(const NetworkSpec& spec) {
  spec.validate();
  const NetworkLayout l = network_layout(spec);
  LatticeModel m(l.dimension);
  add_ssh_segment(m, l.offset_a, l.length_a, spec.delta, spec.Delta, 0);
  // Opposite windings on the two arms: the ring encloses 4(N_B + 1/2) phi.
  add_ssh_segment(m, l.offset_b1, l.length_b, spec.delta, spec.Delta, 1);
  add_ssh_segment(m, l.offset_b2, l.length_b, spec.delta, spec.Delta, -1);
  add_ssh_segment(m, l.offset_d, l.length_d, spec.delta, spec.Delta, 0);
  const double s = splitter_amplitude(spec.delta);
  const int a_end = l.offset_a + l.length_a - 1;
  m.add_bond(a_end, l.offset_b1, s, 1);
  m.add_bond(a_end, l.offset_b2, s, -1);
  m.add_bond(l.offset_b1 + l.length_b - 1, l.offset_d, s, 1);
  m.add_bond(l.offset_b2 + l.length_b - 1, l.offset_d, s, -1);
  return m;
}

HamiltonianMatrix build_network(const NetworkSpec& spec) {
  return network_model(spec).matrix(spec.flux_per_bond);
}

namespace {
HamiltonianMatrix ssh_chain(int n_sites, double delta, double Delta) {
  LatticeModel m(n_sites);
  add_ssh_segment(m, 0, n_sites, delta, Delta, 0);
  return m.matrix(0.0);
}
}  // namespace

VirtualDecomposition virtual_decompose(const NetworkSpec& spec) {
  spec.validate();
  VirtualDecomposition v;
  v.chain_a = ssh_chain(2 * (spec.n_a + spec.n_b), spec.delta, spec.Delta);
  v.chain_b = ssh_chain(2 * spec.n_b, spec.delta, spec.Delta);
  v.chain_d = ssh_chain(2 * spec.n_d, spec.delta, spec.Delta);
  const double theta = (2 * spec.n_b + 1) * spec.flux_per_bond;
  v.t_ad = Complex(0.5 * (1.0 + spec.delta) * std::cos(theta), 0.0);
  v.t_bd = Complex(0.0, 0.5 * (1.0 + spec.delta) * std::sin(theta));
  // sin((2N_B+1)π) is not exactly zero in floating point; snap the decoupled points.
  const double turns = theta / kPi;
  if (std::abs(turns - std::round(turns)) < 1e-12) v.t_bd = 0.0;
  return v;
}

HamiltonianMatrix VirtualDecomposition::assembled() const {
  const int na = chain_a.dimension(), nb = chain_b.dimension(), nd = chain_d.dimension();
  HamiltonianMatrix h{Eigen::MatrixXcd::Zero(na + nb + nd, na + nb + nd)};
  h.entries.block(0, 0, na, na) = chain_a.entries;
  h.entries.block(na, na, nb, nb) = chain_b.entries;
  h.entries.block(na + nb, na + nb, nd, nd) = chain_d.entries;
  const int d1 = na + nb;
  h.entries(na - 1, d1) = -t_ad;
  h.entries(d1, na - 1) = -std::conj(t_ad);
  h.entries(na + nb - 1, d1) = -t_bd;
  h.entries(d1, na + nb - 1) = -std::conj(t_bd);
  return h;
}

BasisMap virtual_basis_map(const NetworkSpec& spec) {
  spec.validate();
  const NetworkLayout l = network_layout(spec);
  BasisMap map{Eigen::MatrixXcd::Zero(l.dimension, l.dimension), l.length_a + l.length_b,
               l.length_b, l.length_d};
  const double inv = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < l.length_a; ++i) map.u(i, l.offset_a + i) = 1.0;
  for (int j = 1; j <= l.length_b; ++j) {
    const Complex e = std::exp(kI * (spec.flux_per_bond * j));
    const int ra = l.length_a + j - 1;
    const int rb = map.length_a + j - 1;
    map.u(ra, l.offset_b1 + j - 1) = inv * e;
    map.u(ra, l.offset_b2 + j - 1) = inv * std::conj(e);
    map.u(rb, l.offset_b1 + j - 1) = inv * e;
    map.u(rb, l.offset_b2 + j - 1) = -inv * std::conj(e);
  }
  const int rd = map.length_a + map.length_b;
  for (int i = 0; i < l.length_d; ++i) map.u(rd + i, l.offset_d + i) = 1.0;
  return map;
}

ArmModes arm_virtual_modes(const NetworkLayout& l, const StateVector& psi, double flux) {
  ArmModes m{StateVector(l.length_b), StateVector(l.length_b)};
  const double inv = 1.0 / std::sqrt(2.0);
  for (int j = 1; j <= l.length_b; ++j) {
    const Complex e = std::exp(kI * (flux * j));
    const Complex up = e * psi[l.offset_b1 + j - 1];
    const Complex down = std::conj(e) * psi[l.offset_b2 + j - 1];
    m.a[j - 1] = inv * (up + down);
    m.b[j - 1] = inv * (up - down);
  }
  return m;
}

Eigen::VectorXcd eigenvalues(const HamiltonianMatrix& h) {
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(h.entries, false);
  if (solver.info() != Eigen::Success) throw NumericalError("eigensolver did not converge");
  return solver.eigenvalues();
}

double spectrum_distance(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  auto one_way = [](const Eigen::VectorXcd& x, const Eigen::VectorXcd& y) {
    std::vector<bool> used(static_cast<std::size_t>(y.size()), false);
    double worst = 0.0;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      double best = std::numeric_limits<double>::infinity();
      Eigen::Index pick = -1;
      for (Eigen::Index j = 0; j < y.size(); ++j) {
        if (used[j]) continue;
        const double d = std::abs(x[i] - y[j]);
        if (d < best) best = d, pick = j;
      }
      used[pick] = true;
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(one_way(a, b), one_way(b, a));
}

Eigen::MatrixXcd site_reversal(int n) {
  Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(n, n);
  for (int j = 0; j < n; ++j) p(j, n - 1 - j) = 1.0;
  return p;
}

void write_triplets(std::ostream& os, const HamiltonianMatrix& h) {
  const auto old = os.precision(17);
  os << "row,col,re,im\n";
  for (int i = 0; i < h.dimension(); ++i)
    for (int j = 0; j < h.dimension(); ++j) {
      const Complex v = h.entries(i, j);
      if (v != Complex(0.0)) os << i << ',' << j << ',' << v.real() << ',' << v.imag() << '\n';
    }
  os.precision(old);
}

}  // namespace nhzak
