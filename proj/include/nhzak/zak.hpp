#pragma once

#include <functional>

#include "nhzak/bloch.hpp"

namespace nhzak {

enum class ZakMethod { closed_form, quadrature, wilson_loop };

struct ZakResult {
  Band band = Band::plus;
  Complex value;
  ZakMethod method = ZakMethod::closed_form;
  int n_k = 0;
};

struct AdiabaticPhase {
  Band band = Band::plus;
  Complex gamma;
  double flux_from = 0.0;
  double flux_to = 0.0;
};

// Multiplies rho(k) by g(k) and chi(k) by 1/conj(g(k)); biorthonormality is kept.
using GaugeTransform = std::function<Complex(double k)>;

const char* method_name(ZakMethod m);

// SSH closed form, requires |Delta| < |delta|.
ZakResult zak_closed_form(double delta, double Delta, Band band = Band::plus, int n_quad = 4096);

// Trapezoid over i<chi|d_k rho> with the derivative taken by finite differences.
ZakResult zak_quadrature(const ModelSpec& model, Band band, int n_quad = 4096);

// Symmetrized biorthogonal link product, second order in 1/n_k.
// The last link ends on the eigenvector continued to k = 2π in the half-angle gauge.
Complex wilson_loop_raw(const ModelSpec& model, Band band, int n_k,
                        const GaugeTransform& gauge = {});

// Richardson-improved loop on the n_k grid; NonConvergenceError if it moves by
// more than tolerance when the grid is doubled.
ZakResult zak_wilson_loop(const ModelSpec& model, Band band, int n_k = 400,
                          double tolerance = 1e-6, const GaugeTransform& gauge = {});

// A_phi = delta / (2 r (r + i Delta)) for the + band.
Complex flux_connection(const ModelSpec& model, double k);

AdiabaticPhase adiabatic_phase(const ModelSpec& model, Band band, double flux_to,
                               int n_quad = 4096, double k = 0.0);

// xi_+ = -Im gamma_+ over a flux sweep 0 -> pi.
double amplification_exponent(double delta, double Delta, int n_quad = 4096);

}  // namespace nhzak
