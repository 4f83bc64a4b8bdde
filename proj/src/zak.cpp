#include "nhzak/zak.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "nhzak/errors.hpp"

namespace nhzak {

const char* method_name(ZakMethod m) {
  switch (m) {
    case ZakMethod::closed_form: return "closed_form";
    case ZakMethod::quadrature: return "quadrature";
    case ZakMethod::wilson_loop: return "wilson_loop";
  }
  return "unknown";
}

namespace {

void require_real(double delta, double Delta) {
  if (!(std::abs(Delta) < std::abs(delta))) {
    throw SpectrumNotRealError("spectrum not fully real: |Delta| = " + std::to_string(std::abs(Delta)) +
                               " >= |delta| = " + std::to_string(std::abs(delta)));
  }
}

double sgn(double x) { return (x > 0.0) - (x < 0.0); }

struct GridPoint {
  Spinor rho, chi;
};

// Eigenvectors on k_j = 2πj/n, j = 0..n, phi_polar unwrapped along the path.
std::vector<GridPoint> band_path(const ModelSpec& model, Band band, int n,
                                 const GaugeTransform& gauge) {
  std::vector<GridPoint> pts;
  pts.reserve(static_cast<std::size_t>(n) + 1);
  std::optional<double> prev;
  for (int j = 0; j <= n; ++j) {
    const double k = 2.0 * kPi * j / n;
    const BlochField f = build_field(model, k);
    const PolarDecomposition p = polar_decompose(f, prev);
    prev = p.phi_polar;
    const BiorthEigenpair e = eigenpair(f, p);
    GridPoint g{e.right(band), e.left(band)};
    if (gauge) {
      const Complex z = gauge(k);
      g.rho *= z;
      g.chi /= std::conj(z);
    }
    pts.push_back(g);
  }
  return pts;
}

Complex symmetric_loop(const std::vector<GridPoint>& pts, int stride) {
  Complex sum = 0.0;
  for (std::size_t j = 0; j + stride < pts.size(); j += stride) {
    const auto& a = pts[j];
    const auto& b = pts[j + stride];
    sum += std::log(a.chi.dot(b.rho)) - std::log(b.chi.dot(a.rho));
  }
  return 0.5 * kI * sum;
}

}  // namespace

ZakResult zak_closed_form(double delta, double Delta, Band band, int n_quad) {
  require_real(delta, Delta);
  if (n_quad < 2) throw ValidationError("n_quad must be >= 2");
  const double h = 2.0 * kPi / n_quad;
  const double D2 = Delta * Delta;
  double integral = 0.0;
  for (int j = 0; j < n_quad; ++j) {
    const double k = j * h;
    const double c = std::cos(0.5 * k), s = std::sin(0.5 * k);
    const double r = std::sqrt(c * c + delta * delta * s * s - D2);
    integral += 1.0 / (4.0 * r * (r * r + D2));
  }
  integral *= h;
  const Complex z(0.5 * kPi * sgn(delta), -Delta * delta * integral);
  return {band, band_sign(band) * z, ZakMethod::closed_form, n_quad};
}

ZakResult zak_quadrature(const ModelSpec& model, Band band, int n_quad) {
  if (n_quad < 2) throw ValidationError("n_quad must be >= 2");
  const double h = 1e-3;
  const double w[4] = {1.0 / 12.0, -2.0 / 3.0, 2.0 / 3.0, -1.0 / 12.0};
  const double off[4] = {-2.0, -1.0, 1.0, 2.0};
  Complex integral = 0.0;
  for (int j = 0; j < n_quad; ++j) {
    const double k = 2.0 * kPi * j / n_quad;
    const BlochField f0 = build_field(model, k);
    const PolarDecomposition p0 = polar_decompose(f0);
    const BiorthEigenpair e0 = eigenpair(f0, p0);
    Spinor drho = Spinor::Zero();
    for (int m = 0; m < 4; ++m) {
      const BlochField f = build_field(model, k + off[m] * h);
      const BiorthEigenpair e = eigenpair(f, polar_decompose(f, p0.phi_polar));
      drho += w[m] * e.right(band);
    }
    drho /= h;
    integral += kI * e0.left(band).dot(drho);
  }
  integral *= 2.0 * kPi / n_quad;
  return {band, integral, ZakMethod::quadrature, n_quad};
}

Complex wilson_loop_raw(const ModelSpec& model, Band band, int n_k, const GaugeTransform& gauge) {
  if (n_k < 16) throw ValidationError("Wilson loop needs n_k >= 16");
  return symmetric_loop(band_path(model, band, n_k, gauge), 1);
}

ZakResult zak_wilson_loop(const ModelSpec& model, Band band, int n_k, double tolerance,
                          const GaugeTransform& gauge) {
  if (n_k < 16) throw ValidationError("Wilson loop needs n_k >= 16");
  if (n_k % 2 != 0) throw ValidationError("Wilson loop needs an even n_k");
  auto improved = [&](int n) {
    const auto pts = band_path(model, band, n, gauge);
    return (4.0 * symmetric_loop(pts, 1) - symmetric_loop(pts, 2)) / 3.0;
  };
  const Complex z = improved(n_k);
  const Complex z2 = improved(2 * n_k);
  if (std::abs(z2 - z) > tolerance) {
    throw NonConvergenceError("Wilson loop moved by " + std::to_string(std::abs(z2 - z)) +
                              " when n_k was doubled from " + std::to_string(n_k));
  }
  return {band, z, ZakMethod::wilson_loop, n_k};
}

Complex flux_connection(const ModelSpec& model, double k) {
  const Complex r = band_energy(model, k, Band::plus);
  return model.delta / (2.0 * r * (r + kI * model.Delta));
}

AdiabaticPhase adiabatic_phase(const ModelSpec& model, Band band, double flux_to, int n_quad,
                               double k) {
  if (n_quad < 2) throw ValidationError("n_quad must be >= 2");
  const double h = (flux_to - model.flux) / n_quad;
  Complex integral = 0.0;
  for (int j = 0; j <= n_quad; ++j) {
    ModelSpec m = model;
    m.flux = model.flux + j * h;
    const BlochField f = build_field(m, k);
    const Complex r2 = f.bx * f.bx + f.by * f.by + f.bz * f.bz;
    if (!(r2.real() > 0.0)) {
      throw SpectrumNotRealError("energy not real along the flux path at flux = " +
                                 std::to_string(m.flux));
    }
    const double wgt = (j == 0 || j == n_quad) ? 0.5 : 1.0;
    integral += wgt * flux_connection(m, k);
  }
  integral *= h;
  return {band, band_sign(band) * integral, model.flux, flux_to};
}

double amplification_exponent(double delta, double Delta, int n_quad) {
  require_real(delta, Delta);
  return -adiabatic_phase({delta, Delta, 0.0}, Band::plus, kPi, n_quad).gamma.imag();
}

}  // namespace nhzak
