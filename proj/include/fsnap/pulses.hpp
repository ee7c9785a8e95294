#pragma once
#include <string>
#include <vector>

#include "fsnap/units.hpp"

#include <Eigen/Dense>

namespace fsnap {

using Eigen::VectorXd;

// Clamped uniform cubic B-spline on [t0, t1]; value is linear in coeffs and
// bounded by their range (basis is a partition of unity).
struct SplineCurve {
  double t0 = 0.0;
  double t1 = 1.0;
  VectorXd coeffs;

  int n_basis() const { return int(coeffs.size()); }
  double value(double t) const;
  double derivative(double t) const;
  // basis functions supported at t: first index and four weights
  void active_basis(double t, int& first, double w[4]) const;
  double knot(int i) const;  // clamped knot vector entry, i in [0, n_basis+4)
};

enum class EnvelopeKind { Constant, RampUp, RampDown, Gaussian, Spline };

struct Segment {
  double t0 = 0.0;
  double t1 = 0.0;
  EnvelopeKind kind = EnvelopeKind::Constant;
  double amplitude = 0.0;
  double sigma = 0.0;       // Gaussian only; support is [center-2s, center+2s]
  bool zero_ends = false;   // subtract the +-2 sigma edge value, renormalize area
  double phase = 0.0;       // carrier phase offset of this segment
  SplineCurve spline;

  double envelope(double t) const;  // zero outside [t0, t1)
};

struct DriveChannel {
  std::string op = "ancilla";  // which ladder operator the drive couples to
  double carrier = 0.0;        // rad/ns
  std::vector<Segment> segments;

  double envelope(double t) const;
  double value(double t) const;  // sum of env_i(t) * cos(carrier*t + phase_i)
};

struct PulseSchedule {
  double duration = 0.0;
  std::vector<DriveChannel> channels;
};

// Peak amplitude such that |m| * (pulse area) = area for a Gaussian of
// duration 4 sigma = t_g. The zero-ends variant renormalizes to the same area,
// so one calibration covers both shapes.
double calibrate_gaussian_amplitude(double m_abs, double t_g, double area = kTwoPi);

Segment make_gaussian_segment(double t0, double t_g, double amplitude,
                              double phase = 0.0, bool zero_ends = true);
Segment make_ramp_segment(double t0, double t_r, double amplitude, bool up);
Segment make_constant_segment(double t0, double t1, double amplitude);

}  // namespace fsnap
