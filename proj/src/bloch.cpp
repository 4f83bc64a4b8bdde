#include "nhzak/bloch.hpp"

#include <cmath>
#include <limits>

#include "nhzak/errors.hpp"

namespace nhzak {

std::vector<double> k_grid(int n_k) {
  if (n_k < 1) throw ValidationError("k grid needs at least one point");
  std::vector<double> ks(static_cast<std::size_t>(n_k));
  for (int n = 0; n < n_k; ++n) ks[n] = 2.0 * kPi * n / n_k;
  return ks;
}

BlochField build_field(const ModelSpec& model, double k) {
  const double arg = 0.5 * k + model.flux;
  return {k, Complex(-std::cos(arg), 0.0), Complex(-model.delta * std::sin(arg), 0.0),
          Complex(0.0, -model.Delta)};
}

Eigen::Matrix2cd bloch_matrix(const BlochField& f) {
  Eigen::Matrix2cd h;
  h << f.bz, f.bx - kI * f.by, f.bx + kI * f.by, -f.bz;
  return h;
}

Complex principal_root(Complex r_squared) {
  Complex r = std::sqrt(r_squared);
  // std::sqrt already gives Re >= 0; on the imaginary axis pick Im >= 0.
  if (r.real() == 0.0 && r.imag() < 0.0) r = -r;
  return r;
}

namespace {

double nearest_branch(double angle, double reference) {
  return angle + 2.0 * kPi * std::round((reference - angle) / (2.0 * kPi));
}

}  // namespace

PolarDecomposition polar_decompose(const BlochField& f, std::optional<double> reference_phi) {
  const Complex r = principal_root(f.bx * f.bx + f.by * f.by + f.bz * f.bz);
  if (std::abs(r) <= kEpsExceptional) {
    throw ExceptionalPointError("exceptional point at k = " + std::to_string(f.k) +
                                ": |r| = " + std::to_string(std::abs(r)));
  }
  double phi = std::atan2(f.by.real(), f.bx.real());
  if (reference_phi) phi = nearest_branch(phi, *reference_phi);
  return {r, f.bz / r, phi};
}

std::vector<PolarDecomposition> polar_decompose_path(const std::vector<BlochField>& fields) {
  std::vector<PolarDecomposition> out;
  out.reserve(fields.size());
  std::optional<double> prev;
  for (const auto& f : fields) {
    out.push_back(polar_decompose(f, prev));
    prev = out.back().phi_polar;
  }
  return out;
}

BiorthEigenpair eigenpair(const BlochField& f, const PolarDecomposition& p) {
  Complex c = std::sqrt(0.5 * (1.0 + p.cos_theta));
  Complex s = std::sqrt(0.5 * (1.0 - p.cos_theta));
  // The principal branches must still satisfy 2 s c r = sqrt(Bx² + By²).
  // Past the PT-breaking point they can land on the opposite sign; flip s.
  const Complex rho_perp = std::sqrt(f.bx * f.bx + f.by * f.by);
  const Complex two_scr = 2.0 * s * c * p.r;
  if (std::abs(two_scr - rho_perp) > std::abs(two_scr + rho_perp)) s = -s;

  const Complex e_minus = std::exp(-kI * p.phi_polar);
  const Complex e_plus = std::exp(kI * p.phi_polar);
  BiorthEigenpair out;
  out.energy_plus = p.r;
  out.energy_minus = -p.r;
  out.rho_plus << c * e_minus, s;
  out.rho_minus << s, -c * e_plus;
  // Left vectors are stored as kets: <chi| = chi.adjoint().
  out.chi_plus << std::conj(c * e_plus), std::conj(s);
  out.chi_minus << std::conj(s), std::conj(-c * e_minus);
  return out;
}

BiorthEigenpair eigenpair(const BlochField& f) { return eigenpair(f, polar_decompose(f)); }

Complex band_energy(const ModelSpec& model, double k, Band band) {
  const BlochField f = build_field(model, k);
  return band_sign(band) * principal_root(f.bx * f.bx + f.by * f.by + f.bz * f.bz);
}

RealityReport spectrum_reality(const ModelSpec& model, int n_k) {
  if (n_k < 2) throw ValidationError("spectrum_reality needs n_k >= 2");
  RealityReport rep;
  rep.min_margin = std::numeric_limits<double>::infinity();
  for (double k : k_grid(n_k)) {
    const BlochField f = build_field(model, k);
    const double margin = (f.bx * f.bx + f.by * f.by + f.bz * f.bz).real();
    if (margin < rep.min_margin) {
      rep.min_margin = margin;
      rep.k_at_min = k;
    }
  }
  if (std::abs(rep.min_margin) <= kEpsExceptional)
    rep.classification = Reality::exceptional;
  else if (rep.min_margin < 0.0)
    rep.classification = Reality::broken;
  else
    rep.classification = Reality::fully_real;
  return rep;
}

const char* reality_name(Reality r) {
  switch (r) {
    case Reality::fully_real: return "fully_real";
    case Reality::exceptional: return "exceptional";
    case Reality::broken: return "broken";
  }
  return "unknown";
}

}  // namespace nhzak
