#include "fwm/medium.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "fwm/constants.hpp"

namespace fwm {

namespace {

void require_finite(double value, const char* field) {
  if (!std::isfinite(value)) {
    throw std::invalid_argument(std::string(field) + " must be finite");
  }
}

}  // namespace

void validate(const SpectralLine& line) {
  require_finite(line.alpha0, "SpectralLine.alpha0");
  require_finite(line.omega0, "SpectralLine.omega0");
  require_finite(line.gamma, "SpectralLine.gamma");
  if (line.omega0 <= 0.0) {
    throw std::invalid_argument("SpectralLine.omega0 must be > 0");
  }
  if (line.gamma <= 0.0) {
    throw std::invalid_argument("SpectralLine.gamma must be > 0");
  }
}

void validate(const MediumModel& medium) {
  require_finite(medium.n0, "MediumModel.n0");
  require_finite(medium.length, "MediumModel.length");
  if (medium.n0 < 1.0 - 1e-6) {
    throw std::invalid_argument("MediumModel.n0 must be >= 1 - 1e-6");
  }
  if (medium.length <= 0.0) {
    throw std::invalid_argument("MediumModel.length must be > 0");
  }
  for (const SpectralLine& line : medium.lines) {
    validate(line);
  }
}

void validate(const SourceConfig& source) {
  require_finite(source.pump, "SourceConfig.pump");
  require_finite(source.one_photon_detuning, "SourceConfig.one_photon_detuning");
  require_finite(source.two_photon_detuning, "SourceConfig.two_photon_detuning");
  require_finite(source.probe, "SourceConfig.probe");
  if (source.pump <= 0.0) {
    throw std::invalid_argument("SourceConfig.pump must be > 0");
  }
  if (source.probe <= 0.0) {
    throw std::invalid_argument("SourceConfig.probe must be > 0");
  }
}

std::complex<double> complex_index_offset(const MediumModel& medium, double omega) {
  validate(medium);
  if (!(omega > 0.0) || !std::isfinite(omega)) {
    throw std::domain_error("complex_index: omega must be positive and finite");
  }
  std::complex<double> sum = 0.0;
  for (const SpectralLine& line : medium.lines) {
    const double prefactor = speed_of_light * line.alpha0 / (2.0 * omega);
    const std::complex<double> denom(omega - line.omega0, line.gamma);
    sum += prefactor * (line.gamma / denom);
  }
  return sum;
}

std::complex<double> complex_index(const MediumModel& medium, double omega) {
  return medium.n0 + complex_index_offset(medium, omega);
}

double group_index(const MediumModel& medium, double omega) {
  validate(medium);
  if (!(omega > 0.0) || !std::isfinite(omega)) {
    throw std::domain_error("group_index: omega must be positive and finite");
  }
  // Per line, n - n0 = A / (omega D) with A = c alpha0 gamma / 2 and
  // D = omega - omega0 + i gamma. In n_g = n + omega dn/domega the offset and
  // the derivative of its 1/omega prefactor cancel exactly:
  //   A / (omega D) - A (D + omega) / (omega D^2) = -A / D^2,
  // so the sum is omega-free apart from D itself.
  double accum = 0.0;
  for (const SpectralLine& line : medium.lines) {
    const double a = speed_of_light * line.alpha0 * line.gamma / 2.0;
    const std::complex<double> d(omega - line.omega0, line.gamma);
    accum -= (a / (d * d)).real();
  }
  return medium.n0 + accum;
}

double intensity_transmission(const MediumModel& medium, double omega) {
  const std::complex<double> n = complex_index(medium, omega);
  return std::exp(-2.0 * n.imag() * omega * medium.length / speed_of_light);
}

double conjugate_frequency(const SourceConfig& source) {
  validate(source);
  const double conjugate = 2.0 * source.pump - source.probe;
  if (conjugate <= 0.0) {
    throw std::domain_error("conjugate_frequency: 2 pump - probe must be > 0");
  }
  return conjugate;
}

std::vector<ComplexIndexSample> sample_complex_index(const MediumModel& medium,
                                                     const std::vector<double>& omegas) {
  std::vector<ComplexIndexSample> samples;
  samples.reserve(omegas.size());
  for (double omega : omegas) {
    samples.push_back({omega, complex_index(medium, omega)});
  }
  return samples;
}

}  // namespace fwm
