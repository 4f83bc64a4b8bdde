#include <doctest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "nhzak/bloch.hpp"
#include "nhzak/errors.hpp"
#include "nhzak/lattice.hpp"
#include "oracles.hpp"

using namespace nhzak;

namespace {

Eigen::VectorXcd bloch_multiset(const SshRingSpec& ring) {
  Eigen::VectorXcd out(2 * ring.n_cells);
  const ModelSpec m{ring.delta, ring.Delta, ring.flux_per_bond};
  for (int j = 0; j < ring.n_cells; ++j) {
    const double k = 2.0 * kPi * j / ring.n_cells;
    out[2 * j] = band_energy(m, k, Band::plus);
    out[2 * j + 1] = band_energy(m, k, Band::minus);
  }
  return out;
}

StateVector random_state(int n, unsigned seed) {
  std::mt19937 gen(seed);
  std::normal_distribution<double> g;
  StateVector v(n);
  for (int i = 0; i < n; ++i) v[i] = Complex(g(gen), g(gen));
  return v;
}

}  // namespace

TEST_SUITE("lattice") {

TEST_CASE("two-cell ring by hand") {
  const double d = 0.15, D = 0.1, phi = 0.3;
  const HamiltonianMatrix h = build_ssh_ring({2, d, D, phi});
  const Complex e = std::exp(kI * phi);
  const double t1 = -0.5 * (1.0 - d), t2 = -0.5 * (1.0 + d);
  Eigen::MatrixXcd expect = Eigen::MatrixXcd::Zero(4, 4);
  // site j carries i Delta (-1)^j, so the first site has -i Delta
  expect(0, 0) = -kI * D;
  expect(1, 1) = kI * D;
  expect(2, 2) = -kI * D;
  expect(3, 3) = kI * D;
  expect(0, 1) = t1 * e;
  expect(1, 2) = t2 * e;
  expect(2, 3) = t1 * e;
  expect(3, 0) = t2 * e;
  expect(1, 0) = t1 / e;
  expect(2, 1) = t2 / e;
  expect(3, 2) = t1 / e;
  expect(0, 3) = t2 / e;
  CHECK((h.entries - expect).norm() < 1e-15);
}

TEST_CASE("eight-site network by hand") {
  const double d = 0.15, D = 0.1, phi = 0.4;
  const HamiltonianMatrix h = build_network({1, 1, 1, d, D, phi});
  const Complex e = std::exp(kI * phi);
  const double t1 = -0.5 * (1.0 - d);
  const double s = -(1.0 + d) / (2.0 * std::sqrt(2.0));
  Eigen::MatrixXcd x = Eigen::MatrixXcd::Zero(8, 8);
  for (int i = 0; i < 8; i += 2) {
    x(i, i) = -kI * D;
    x(i + 1, i + 1) = kI * D;
  }
  x(0, 1) = t1;
  x(2, 3) = t1 * e;
  x(4, 5) = t1 / e;
  x(6, 7) = t1;
  x(1, 2) = s * e;
  x(1, 4) = s / e;
  x(3, 6) = s * e;
  x(5, 6) = s / e;
  for (int i = 0; i < 8; ++i)
    for (int j = i + 1; j < 8; ++j) x(j, i) = std::conj(x(i, j));
  CHECK((h.entries - x).norm() < 1e-15);
  CHECK(std::abs(s - (-oracle::kSplitter)) < 1e-15);
}

TEST_CASE("Hermitian part and Delta") {
  const HamiltonianMatrix h = build_network({3, 2, 4, 0.2, 0.0, 0.7});
  CHECK((h.entries - h.entries.adjoint()).norm() < 1e-15);
  const HamiltonianMatrix g = build_network({3, 2, 4, 0.2, 0.1, 0.7});
  const Eigen::MatrixXcd anti = g.entries - g.entries.adjoint();
  CHECK((anti - anti.diagonal().asDiagonal().toDenseMatrix()).norm() < 1e-15);
}

TEST_CASE("ring is PT symmetric") {
  for (double phi : {0.0, 0.25, 2.0}) {
    const SshRingSpec ring{7, 0.15, 0.1, phi};
    const HamiltonianMatrix h = build_ssh_ring(ring);
    const Eigen::MatrixXcd p = site_reversal(ring.n_cells * 2);
    CHECK((p * h.entries.conjugate() * p - h.entries).norm() < 1e-14);
  }
}

TEST_CASE("site reversal") {
  const Eigen::MatrixXcd p = site_reversal(5);
  CHECK((p * p - Eigen::MatrixXcd::Identity(5, 5)).norm() == 0.0);
  CHECK(p(0, 4) == Complex(1.0));
  CHECK(p(2, 2) == Complex(1.0));
}

TEST_CASE("ring spectrum equals the Bloch bands") {
  for (const SshRingSpec ring : {SshRingSpec{10, 0.15, 0.1, 0.0}, SshRingSpec{13, -0.3, 0.2, 0.45},
                                 SshRingSpec{16, 0.2, 0.0, 1.2}}) {
    const Eigen::VectorXcd ev = eigenvalues(build_ssh_ring(ring));
    CHECK(spectrum_distance(ev, bloch_multiset(ring)) < 1e-10);
  }
}

TEST_CASE("matrix-free apply matches the dense matrix") {
  const LatticeModel m = network_model({4, 3, 5, 0.15, 0.1, 0.0});
  const StateVector v = random_state(m.dimension(), 7);
  for (double phi : {0.0, 0.9, kPi}) {
    StateVector out;
    m.apply(phi, v, out);
    CHECK((out - m.matrix(phi).entries * v).norm() < 1e-13);
  }
  CHECK(m.max_abs_entry() == doctest::Approx(0.5 * 1.15));
}

TEST_CASE("bond validation") {
  LatticeModel m(4);
  CHECK_THROWS_AS(m.add_bond(0, 4, 1.0, 0), ValidationError);
  CHECK_THROWS_AS(m.add_bond(2, 2, 1.0, 0), ValidationError);
  CHECK_THROWS_AS(LatticeModel(0), ValidationError);
  CHECK_THROWS_AS(build_network({0, 1, 1, 0.1, 0.0, 0.0}), ValidationError);
  CHECK_THROWS_AS(build_ssh_ring({1, 0.1, 0.0, 0.0}), ValidationError);
}

TEST_CASE("virtual basis map is unitary and block-diagonalizes the network") {
  for (double phi : {0.0, 0.4, 1.3, kPi}) {
    const NetworkSpec spec{2, 3, 2, 0.15, 0.1, phi};
    const BasisMap map = virtual_basis_map(spec);
    const int n = static_cast<int>(map.u.rows());
    CHECK((map.u * map.u.adjoint() - Eigen::MatrixXcd::Identity(n, n)).norm() < 1e-14);
    const Eigen::MatrixXcd ht = map.u * build_network(spec).entries * map.u.adjoint();
    CHECK((ht - virtual_decompose(spec).assembled().entries).norm() < 1e-13);
  }
}

TEST_CASE("virtual couplings") {
  const VirtualDecomposition v0 = virtual_decompose({2, 2, 2, 0.15, 0.1, 0.0});
  CHECK(v0.t_bd == Complex(0.0));
  CHECK(v0.t_ad == Complex(0.575));
  const VirtualDecomposition vp = virtual_decompose({2, 2, 2, 0.15, 0.1, kPi});
  CHECK(vp.t_bd == Complex(0.0));
  CHECK(vp.t_ad.real() == doctest::Approx(-0.575));
  const double theta = 5 * 0.4;
  const VirtualDecomposition v = virtual_decompose({2, 2, 2, 0.15, 0.1, 0.4});
  CHECK(std::norm(v.t_ad) + std::norm(v.t_bd) == doctest::Approx(0.575 * 0.575));
  CHECK(v.t_bd.imag() == doctest::Approx(0.575 * std::sin(theta)));
  CHECK(v.chain_a.dimension() == 8);
  CHECK(v.chain_b.dimension() == 4);
}

TEST_CASE("arm modes agree with the basis map") {
  const NetworkSpec spec{2, 3, 2, 0.15, 0.1, 0.7};
  const BasisMap map = virtual_basis_map(spec);
  const NetworkLayout l = network_layout(spec);
  const StateVector psi = random_state(l.dimension, 11);
  const StateVector vt = map.u * psi;
  const ArmModes m = arm_virtual_modes(l, psi, spec.flux_per_bond);
  CHECK((m.a - vt.segment(l.length_a, l.length_b)).norm() < 1e-14);
  CHECK((m.b - vt.segment(map.length_a, l.length_b)).norm() < 1e-14);
}

TEST_CASE("spectrum distance") {
  Eigen::VectorXcd a(3), b(3);
  a << 1.0, 2.0, 3.0;
  b << 3.0, 1.0, 2.0 + 1e-3;
  CHECK(spectrum_distance(a, b) == doctest::Approx(1e-3));
  Eigen::VectorXcd c(3);
  c << 1.0, 1.0, 3.0;
  CHECK(spectrum_distance(a, c) == doctest::Approx(1.0));
}

TEST_CASE("triplet output") {
  std::ostringstream os;
  write_triplets(os, build_ssh_ring({2, 0.0, 0.0, 0.0}));
  const std::string s = os.str();
  CHECK(s.rfind("row,col,re,im\n", 0) == 0);
  CHECK(s.find("0,1,-0.5,") != std::string::npos);
  CHECK(std::count(s.begin(), s.end(), '\n') == 1 + 8);
}

}  // TEST_SUITE
