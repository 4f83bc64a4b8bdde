#pragma once

#include <complex>
#include <numbers>

#include <Eigen/Dense>

namespace nhzak {

using Complex = std::complex<double>;
using StateVector = Eigen::VectorXcd;
using Spinor = Eigen::Vector2cd;

inline constexpr double kPi = std::numbers::pi;
inline constexpr Complex kI{0.0, 1.0};

// The two bands of a two-band model; plus carries energy +r.
enum class Band { plus, minus };

inline double band_sign(Band b) { return b == Band::plus ? 1.0 : -1.0; }
inline const char* band_name(Band b) { return b == Band::plus ? "+" : "-"; }

}  // namespace nhzak
