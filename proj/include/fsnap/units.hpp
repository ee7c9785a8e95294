#pragma once
#include <cmath>
#include <complex>

namespace fsnap {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;
using cxd = std::complex<double>;
inline constexpr cxd kI{0.0, 1.0};

// Internal unit system: hbar = 1, time in ns, angular frequency in rad/ns.
// All I/O frequencies are ordinary frequencies in GHz, so omega = 2*pi*f.
inline double ghz(double f_ghz) { return kTwoPi * f_ghz; }
inline double to_ghz(double omega) { return omega / kTwoPi; }
inline double mhz(double f_mhz) { return kTwoPi * 1e-3 * f_mhz; }
inline double to_mhz(double omega) { return 1e3 * omega / kTwoPi; }

// k_B/hbar in rad/ns per kelvin (k_B/h = 20.83661912 GHz/K).
inline constexpr double kBoltzmann = kTwoPi * 20.83661912;

// Nearest representative of x modulo period, in (-period/2, period/2].
inline double wrap_centered(double x, double period) {
  double w = x - period * std::round(x / period);
  if (w <= -0.5 * period) w += period;
  if (w > 0.5 * period) w -= period;
  return w;
}

inline double bose_occupation(double omega, double temperature_K) {
  if (temperature_K <= 0.0 || omega <= 0.0) return 0.0;
  double x = omega / (kBoltzmann * temperature_K);
  if (x > 700.0) return 0.0;
  return 1.0 / std::expm1(x);
}

}  // namespace fsnap
