#include "fsnap/pulses.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

namespace fsnap {

namespace {

// area of exp(-u^2/2) over |u| <= 2, and of the edge-subtracted variant
const double kGaussArea = std::sqrt(kTwoPi) * std::erf(std::sqrt(2.0));
const double kEdge = std::exp(-2.0);
const double kShiftedArea = kGaussArea - 4.0 * kEdge;
const double kRenorm = kGaussArea / kShiftedArea;

double cox_de_boor(int i, int k, double t, const std::function<double(int)>& knot) {
  if (k == 1) return (t >= knot(i) && t < knot(i + 1)) ? 1.0 : 0.0;
  double acc = 0.0;
  double dl = knot(i + k - 1) - knot(i);
  if (dl > 0.0) acc += (t - knot(i)) / dl * cox_de_boor(i, k - 1, t, knot);
  double dr = knot(i + k) - knot(i + 1);
  if (dr > 0.0) acc += (knot(i + k) - t) / dr * cox_de_boor(i + 1, k - 1, t, knot);
  return acc;
}

}  // namespace

double SplineCurve::knot(int i) const {
  const int n = n_basis();
  const int segments = n - 3;  // cubic, clamped
  double h = (t1 - t0) / segments;
  if (i < 4) return t0;
  if (i >= n) return t1;
  return t0 + (i - 3) * h;
}

void SplineCurve::active_basis(double t, int& first, double w[4]) const {
  const int n = n_basis();
  if (n < 4) throw std::invalid_argument("spline needs at least 4 control points");
  const int segments = n - 3;
  double h = (t1 - t0) / segments;
  double clamped = std::min(std::max(t, t0), std::nextafter(t1, t0));
  int seg = std::min(int((clamped - t0) / h), segments - 1);
  first = seg;
  auto kn = [this](int i) { return knot(i); };
  for (int j = 0; j < 4; ++j) w[j] = cox_de_boor(first + j, 4, clamped, kn);
}

double SplineCurve::value(double t) const {
  if (t < t0 || t > t1) return 0.0;
  int first;
  double w[4];
  active_basis(t, first, w);
  double acc = 0.0;
  for (int j = 0; j < 4; ++j) acc += coeffs(first + j) * w[j];
  return acc;
}

double SplineCurve::derivative(double t) const {
  if (t < t0 || t > t1) return 0.0;
  const int n = n_basis();
  const int segments = n - 3;
  double h = (t1 - t0) / segments;
  double clamped = std::min(std::max(t, t0), std::nextafter(t1, t0));
  int seg = std::min(int((clamped - t0) / h), segments - 1);
  auto kn = [this](int i) { return knot(i); };
  // d/dt sum c_i B_{i,4} = sum 3 (c_i - c_{i-1}) / (u_{i+3} - u_i) B_{i,3}
  double acc = 0.0;
  for (int i = seg; i <= seg + 3; ++i) {
    if (i == 0) continue;
    double span = knot(i + 3) - knot(i);
    if (span <= 0.0) continue;
    acc += 3.0 * (coeffs(i) - coeffs(i - 1)) / span * cox_de_boor(i, 3, clamped, kn);
  }
  return acc;
}

double Segment::envelope(double t) const {
  if (t < t0 || t >= t1) return 0.0;
  switch (kind) {
    case EnvelopeKind::Constant:
      return amplitude;
    case EnvelopeKind::RampUp: {
      double s = std::sin(0.5 * M_PI * (t - t0) / (t1 - t0));
      return amplitude * s * s;
    }
    case EnvelopeKind::RampDown: {
      double s = std::sin(0.5 * M_PI * (t1 - t) / (t1 - t0));
      return amplitude * s * s;
    }
    case EnvelopeKind::Gaussian: {
      double center = 0.5 * (t0 + t1);
      double u = (t - center) / sigma;
      if (std::abs(u) > 2.0) return 0.0;
      double g = std::exp(-0.5 * u * u);
      if (!zero_ends) return amplitude * g;
      return amplitude * kRenorm * (g - kEdge);
    }
    case EnvelopeKind::Spline:
      return spline.value(t);
  }
  return 0.0;
}

double DriveChannel::envelope(double t) const {
  double acc = 0.0;
  for (const auto& s : segments) acc += s.envelope(t);
  return acc;
}

double DriveChannel::value(double t) const {
  double acc = 0.0;
  for (const auto& s : segments)
    acc += s.envelope(t) * std::cos(carrier * t + s.phase);
  return acc;
}

double calibrate_gaussian_amplitude(double m_abs, double t_g, double area) {
  if (m_abs <= 0.0 || t_g <= 0.0) throw std::invalid_argument("calibration needs m, t_g > 0");
  double sigma = 0.25 * t_g;
  return area / (m_abs * sigma * kGaussArea);
}

Segment make_gaussian_segment(double t0, double t_g, double amplitude, double phase,
                              bool zero_ends) {
  Segment s;
  s.t0 = t0;
  s.t1 = t0 + t_g;
  s.kind = EnvelopeKind::Gaussian;
  s.amplitude = amplitude;
  s.sigma = 0.25 * t_g;
  s.zero_ends = zero_ends;
  s.phase = phase;
  return s;
}

Segment make_ramp_segment(double t0, double t_r, double amplitude, bool up) {
  Segment s;
  s.t0 = t0;
  s.t1 = t0 + t_r;
  s.kind = up ? EnvelopeKind::RampUp : EnvelopeKind::RampDown;
  s.amplitude = amplitude;
  return s;
}

Segment make_constant_segment(double t0, double t1, double amplitude) {
  Segment s;
  s.t0 = t0;
  s.t1 = t1;
  s.kind = EnvelopeKind::Constant;
  s.amplitude = amplitude;
  return s;
}

}  // namespace fsnap
