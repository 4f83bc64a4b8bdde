#pragma once

// Values computed outside this code base (mpmath at 30 digits, cross-checked
// with a 10^6-point numpy trapezoid) and frozen here.
namespace oracle {

// delta = 0.15, Delta = 0.1
inline constexpr double kZakIntegral = 55.2019839622751989758682963388;  // ∫ dk / (4 r (r² + Δ²))
inline constexpr double kImZakPlus = -0.828029759434127984638024445081;
inline constexpr double kXiPlus = 0.828029759434127984638024445081;
inline constexpr double kNormGrowth = 5.23862740740838576744847357655;  // e^{2 xi}
inline constexpr double kTransmit = 0.315821558212755975853235269967;
inline constexpr double kConfine = 0.684178441787244024146764730033;
inline constexpr double kTransmitDelta005 = 0.105179480086615268614909690054;  // Delta = 0.05
inline constexpr double kTransmitDelta012 = 0.396490963794105994943685308360;  // Delta = 0.12
inline constexpr double kGroupVelocity = 0.345167249568326790615422133146;    // |d r/dk| at π/2
inline constexpr double kRMax = 0.994987437106619954734479821001;             // sqrt(1 - Δ²)
inline constexpr double kRMin = 0.111803398874989484820458683437;             // sqrt(δ² - Δ²)

// Field at delta = 0.15, flux = π/3, k = 2π/5
inline constexpr double kBxSample = 0.104528463267653471399834154802;
inline constexpr double kBySample = -0.149178284305241000538403791747;

inline constexpr double kSplitter = 0.406586399182264826530485508210;  // (1+δ)/(2√2), δ = 0.15

}  // namespace oracle
