#pragma once

#include <complex>
#include <vector>

namespace fwm {

// One Lorentzian line of a dispersive gain/absorption medium. The complex
// refractive index is
//
//   n(w) = n0 + sum_lines (c * alpha0 / (2 w)) * gamma / (w - omega0 + i gamma)
//
// with the plane-wave convention exp(i (n w z / c - w t)), so Im n < 0
// amplifies: alpha0 > 0 is a gain line, alpha0 < 0 an absorption line, and at
// line center the intensity transmission over length L is exp(alpha0 * L).
struct SpectralLine {
  double alpha0 = 0.0;  // peak intensity gain (>0) / absorption (<0) coefficient, 1/m
  double omega0 = 0.0;  // line center, rad/s, > 0
  double gamma = 0.0;   // half-width at half-maximum, rad/s, > 0
};

struct MediumModel {
  double n0 = 1.0;      // background refractive index, >= 1 - 1e-6
  double length = 0.0;  // propagation length, m, > 0
  std::vector<SpectralLine> lines;
};

// Pump/probe bookkeeping for the four-wave-mixing source. All frequencies in
// rad/s. Detunings are signed, blue positive; they are carried for
// configuration completeness and do not enter the energy-conservation
// relation, which involves only pump and probe.
struct SourceConfig {
  double pump = 0.0;                // pump frequency, rad/s, > 0
  double one_photon_detuning = 0.0; // pump offset from the atomic line, rad/s
  double two_photon_detuning = 0.0; // two-photon offset, rad/s
  double probe = 0.0;               // injected probe frequency, rad/s, > 0
};

// One sampled value of the complex index.
struct ComplexIndexSample {
  double omega = 0.0;  // rad/s
  std::complex<double> n;
};

// Throw std::invalid_argument naming the offending field if the structure
// violates its invariants (finite values, gamma > 0, omega0 > 0, length > 0,
// n0 >= 1 - 1e-6, frequencies > 0).
void validate(const SpectralLine& line);
void validate(const MediumModel& medium);
void validate(const SourceConfig& source);

// Complex refractive index at omega (rad/s). Throws std::domain_error for
// omega <= 0, std::invalid_argument for an invalid medium.
std::complex<double> complex_index(const MediumModel& medium, double omega);

// n(omega) - n0, the bare line sum. Numerically exact where n - n0 is tiny
// (subtracting n0 from complex_index would round at 1 ulp of n0).
std::complex<double> complex_index_offset(const MediumModel& medium, double omega);

// Group index n0 + omega * d(Re n)/d(omega) from the closed-form derivative
// of the line sum (the 1/omega prefactor is differentiated exactly, not
// treated as constant). The group velocity is c / group_index.
double group_index(const MediumModel& medium, double omega);

// Intensity transmission through the full cell, exp(-2 Im n(omega) w L / c).
// Values > 1 indicate gain.
double intensity_transmission(const MediumModel& medium, double omega);

// Conjugate frequency 2 * pump - probe (energy conservation for two pump
// photons converting into probe + conjugate). Throws std::domain_error if the
// result would be <= 0.
double conjugate_frequency(const SourceConfig& source);

// complex_index evaluated over a frequency grid (rad/s, all > 0).
std::vector<ComplexIndexSample> sample_complex_index(const MediumModel& medium,
                                                     const std::vector<double>& omegas);

}  // namespace fwm
