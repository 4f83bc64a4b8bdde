#pragma once

#include <optional>
#include <vector>

#include "nhzak/types.hpp"

namespace nhzak {

// Non-Hermitian SSH ring in momentum space. flux is the Peierls phase per bond.
struct ModelSpec {
  double delta = 0.0;
  double Delta = 0.0;
  double flux = 0.0;
};

// h_k = B(k)·σ with a complex field. Bz is the staggered gain/loss, -iΔ.
struct BlochField {
  double k = 0.0;
  Complex bx, by, bz;
};

struct PolarDecomposition {
  Complex r;
  Complex cos_theta;
  double phi_polar = 0.0;
};

struct BiorthEigenpair {
  Complex energy_plus, energy_minus;
  Spinor rho_plus, rho_minus;
  Spinor chi_plus, chi_minus;

  const Spinor& right(Band b) const { return b == Band::plus ? rho_plus : rho_minus; }
  const Spinor& left(Band b) const { return b == Band::plus ? chi_plus : chi_minus; }
  Complex energy(Band b) const { return b == Band::plus ? energy_plus : energy_minus; }
};

enum class Reality { fully_real, exceptional, broken };

struct RealityReport {
  double min_margin = 0.0;  // min over k of Re(Bx²+By²) - Δ²
  double k_at_min = 0.0;
  Reality classification = Reality::fully_real;
};

inline constexpr double kEpsExceptional = 1e-10;

std::vector<double> k_grid(int n_k);

BlochField build_field(const ModelSpec& model, double k);
Eigen::Matrix2cd bloch_matrix(const BlochField& field);

// Principal root with Re(r) >= 0, ties resolved toward Im(r) >= 0.
Complex principal_root(Complex r_squared);

// phi_polar is taken on the branch nearest reference_phi when one is given.
PolarDecomposition polar_decompose(const BlochField& field,
                                   std::optional<double> reference_phi = {});
std::vector<PolarDecomposition> polar_decompose_path(const std::vector<BlochField>& fields);

BiorthEigenpair eigenpair(const BlochField& field, const PolarDecomposition& polar);
BiorthEigenpair eigenpair(const BlochField& field);

// Band energy +r(k, flux) or -r of the SSH ring.
Complex band_energy(const ModelSpec& model, double k, Band band);

RealityReport spectrum_reality(const ModelSpec& model, int n_k);

const char* reality_name(Reality r);

}  // namespace nhzak
