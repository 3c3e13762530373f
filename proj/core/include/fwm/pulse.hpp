#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "fwm/medium.hpp"

namespace fwm {

// Complex envelope on a uniform time grid around an optical carrier. The
// field is samples[k] * exp(-i carrier t_k) with t_k = t0 + k dt.
struct Pulse {
  double carrier = 0.0;  // rad/s, > 0
  double t0 = 0.0;       // time of first sample, s
  double dt = 0.0;       // sample spacing, s, > 0
  std::vector<std::complex<double>> samples;  // >= 16 samples, finite, energy > 0
};

struct PropagationReport {
  double peak_delay_s = 0.0;      // quadratic interpolation around the intensity maximum
  double centroid_delay_s = 0.0;  // first-moment (centroid) delay; primary estimator
  double energy_gain = 0.0;       // output energy / input energy
  double fractional_delay = 0.0;  // centroid delay / input intensity FWHM
};

struct WidthScanPoint {
  double width_s = 0.0;            // input intensity FWHM
  double centroid_delay_s = 0.0;
  double fractional_delay = 0.0;   // centroid delay / width
};

void validate(const Pulse& pulse);

// Full single-pass transfer function exp(i n(omega) omega L / c).
std::complex<double> transfer_function(const MediumModel& medium, double omega);

// Frequency-domain envelope propagation: FFT, multiply each bin by
// exp(i (n(omega_bin) - n0) omega_bin L / c) (the background phase
// n0 omega L / c is removed so delays are relative to the n0 transit), inverse
// FFT. Sample count must be a power of two. Throws std::runtime_error if the
// envelope spectrum at the grid-edge (Nyquist) bins exceeds 1e-6 of its peak:
// the grid is too coarse for the pulse and the result would wrap.
Pulse propagate(const MediumModel& medium, const Pulse& input);

// Delay/energy observables between an input and its propagated output. Both
// pulses must share dt and sample count. Throws std::domain_error on zero
// input or output energy.
PropagationReport measure(const Pulse& input, const Pulse& output);

// Unit-energy Gaussian test pulses of the given intensity FWHMs (strictly
// ascending, > 0) propagated through the medium; self-sizing time grids.
// fractional_delay per point is centroid delay / width: negative values are
// fractional advancement (fast light), positive fractional delay (slow light).
std::vector<WidthScanPoint> scan_pulse_widths(const MediumModel& medium,
                                              double carrier,
                                              const std::vector<double>& widths_s);

// Gaussian envelope with unit energy: intensity FWHM fwhm_s, centered at
// center_s on the grid t0 = center_s - samples/2 * dt.
Pulse make_gaussian_pulse(double carrier, double fwhm_s, double dt,
                          std::size_t samples, double center_s);

// Intensity FWHM from samples (linear interpolation of the half-maximum
// crossings). Throws std::domain_error if the pulse has no interior maximum.
double intensity_fwhm(const Pulse& pulse);

}  // namespace fwm
