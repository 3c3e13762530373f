#include "fwm/pulse.hpp"

#include <unsupported/Eigen/FFT>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fwm/constants.hpp"

namespace fwm {

namespace {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

double energy_of(const Pulse& pulse) {
  double sum = 0.0;
  for (const std::complex<double>& s : pulse.samples) {
    sum += std::norm(s);
  }
  return sum * pulse.dt;
}

// Intensity peak position in fractional sample units: parabola through the
// maximum and its neighbors; plain maximum at the grid edge.
double peak_position(const std::vector<double>& intensity) {
  const std::size_t m =
      std::max_element(intensity.begin(), intensity.end()) - intensity.begin();
  if (m == 0 || m + 1 == intensity.size()) {
    return static_cast<double>(m);
  }
  const double left = intensity[m - 1];
  const double mid = intensity[m];
  const double right = intensity[m + 1];
  const double denom = left - 2.0 * mid + right;
  if (denom == 0.0) {
    return static_cast<double>(m);
  }
  double shift = 0.5 * (left - right) / denom;
  shift = std::clamp(shift, -0.5, 0.5);
  return static_cast<double>(m) + shift;
}

double centroid_time(const Pulse& pulse) {
  double weight = 0.0;
  double moment = 0.0;
  for (std::size_t k = 0; k < pulse.samples.size(); ++k) {
    const double intensity = std::norm(pulse.samples[k]);
    weight += intensity;
    moment += intensity * (pulse.t0 + static_cast<double>(k) * pulse.dt);
  }
  if (weight <= 0.0) {
    throw std::domain_error("centroid: zero pulse energy");
  }
  return moment / weight;
}

std::size_t next_power_of_two(std::size_t n) {
  std::size_t p = 1;
  while (p < n) {
    p <<= 1;
  }
  return p;
}

}  // namespace

void validate(const Pulse& pulse) {
  if (!std::isfinite(pulse.carrier) || pulse.carrier <= 0.0) {
    throw std::invalid_argument("Pulse.carrier must be > 0");
  }
  if (!std::isfinite(pulse.dt) || pulse.dt <= 0.0) {
    throw std::invalid_argument("Pulse.dt must be > 0");
  }
  if (!std::isfinite(pulse.t0)) {
    throw std::invalid_argument("Pulse.t0 must be finite");
  }
  if (pulse.samples.size() < 16) {
    throw std::invalid_argument("Pulse needs at least 16 samples");
  }
  double energy = 0.0;
  for (const std::complex<double>& s : pulse.samples) {
    if (!std::isfinite(s.real()) || !std::isfinite(s.imag())) {
      throw std::invalid_argument("Pulse samples must be finite");
    }
    energy += std::norm(s);
  }
  if (energy * pulse.dt <= 0.0) {
    throw std::invalid_argument("Pulse energy must be > 0");
  }
}

std::complex<double> transfer_function(const MediumModel& medium, double omega) {
  const std::complex<double> n = complex_index(medium, omega);
  const std::complex<double> i(0.0, 1.0);
  return std::exp(i * n * omega * (medium.length / speed_of_light));
}

Pulse propagate(const MediumModel& medium, const Pulse& input) {
  validate(medium);
  validate(input);
  const std::size_t n = input.samples.size();
  if (!is_power_of_two(n)) {
    throw std::invalid_argument("propagate: sample count must be a power of two");
  }
  // The frequency of bin j is omega = carrier - 2 pi f_j for the envelope
  // convention used here (field = envelope * exp(-i carrier t)); the full
  // span must stay at positive optical frequency.
  const double bin_hz = 1.0 / (static_cast<double>(n) * input.dt);
  if (input.carrier <= two_pi * bin_hz * static_cast<double>(n / 2)) {
    throw std::invalid_argument("propagate: carrier below the grid bandwidth");
  }

  Eigen::FFT<double> fft;
  std::vector<std::complex<double>> spectrum(n);
  fft.fwd(spectrum, input.samples);

  double peak = 0.0;
  for (const std::complex<double>& s : spectrum) {
    peak = std::max(peak, std::abs(s));
  }
  // Energy at the grid edge means the grid cannot represent the pulse
  // bandwidth; the filtered result would alias, so refuse.
  const std::size_t nyquist = n / 2;
  const double edge = std::max({std::abs(spectrum[nyquist - 1]),
                                std::abs(spectrum[nyquist]),
                                std::abs(spectrum[nyquist + 1])});
  if (edge > 1e-6 * peak) {
    throw std::runtime_error(
        "propagate: envelope spectrum exceeds 1e-6 of peak at the grid edge");
  }

  const std::complex<double> i(0.0, 1.0);
  const double scale = medium.length / speed_of_light;
  for (std::size_t j = 0; j < n; ++j) {
    const double fj = (j <= nyquist ? static_cast<double>(j)
                                    : static_cast<double>(j) - static_cast<double>(n)) *
                      bin_hz;
    const double omega = input.carrier - two_pi * fj;
    const std::complex<double> dn = complex_index_offset(medium, omega);
    spectrum[j] *= std::exp(i * dn * omega * scale);
  }

  Pulse output = input;
  fft.inv(output.samples, spectrum);
  return output;
}

PropagationReport measure(const Pulse& input, const Pulse& output) {
  validate(input);
  validate(output);
  if (input.samples.size() != output.samples.size() || input.dt != output.dt) {
    throw std::invalid_argument("measure: pulses must share grid shape");
  }
  std::vector<double> intensity_in(input.samples.size());
  std::vector<double> intensity_out(output.samples.size());
  for (std::size_t k = 0; k < input.samples.size(); ++k) {
    intensity_in[k] = std::norm(input.samples[k]);
    intensity_out[k] = std::norm(output.samples[k]);
  }
  const double energy_in = energy_of(input);
  const double energy_out = energy_of(output);
  if (energy_in <= 0.0 || energy_out <= 0.0) {
    throw std::domain_error("measure: zero pulse energy");
  }

  PropagationReport report;
  const double peak_in = input.t0 + peak_position(intensity_in) * input.dt;
  const double peak_out = output.t0 + peak_position(intensity_out) * output.dt;
  report.peak_delay_s = peak_out - peak_in;
  report.centroid_delay_s = centroid_time(output) - centroid_time(input);
  report.energy_gain = energy_out / energy_in;
  report.fractional_delay = report.centroid_delay_s / intensity_fwhm(input);
  return report;
}

double intensity_fwhm(const Pulse& pulse) {
  validate(pulse);
  std::vector<double> intensity(pulse.samples.size());
  for (std::size_t k = 0; k < pulse.samples.size(); ++k) {
    intensity[k] = std::norm(pulse.samples[k]);
  }
  const std::size_t m =
      std::max_element(intensity.begin(), intensity.end()) - intensity.begin();
  if (m == 0 || m + 1 == intensity.size()) {
    throw std::domain_error("intensity_fwhm: maximum at the grid edge");
  }
  const double half = intensity[m] / 2.0;
  double left = -1.0;
  for (std::size_t k = m; k-- > 0;) {
    if (intensity[k] <= half) {
      const double frac = (half - intensity[k]) / (intensity[k + 1] - intensity[k]);
      left = (static_cast<double>(k) + frac) * pulse.dt;
      break;
    }
  }
  double right = -1.0;
  for (std::size_t k = m + 1; k < intensity.size(); ++k) {
    if (intensity[k] <= half) {
      const double frac = (intensity[k - 1] - half) / (intensity[k - 1] - intensity[k]);
      right = (static_cast<double>(k - 1) + frac) * pulse.dt;
      break;
    }
  }
  if (left < 0.0 || right < 0.0) {
    throw std::domain_error("intensity_fwhm: half maximum not bracketed by the grid");
  }
  return right - left;
}

Pulse make_gaussian_pulse(double carrier, double fwhm_s, double dt,
                          std::size_t samples, double center_s) {
  if (!(fwhm_s > 0.0) || !(dt > 0.0)) {
    throw std::invalid_argument("make_gaussian_pulse: fwhm and dt must be > 0");
  }
  Pulse pulse;
  pulse.carrier = carrier;
  pulse.dt = dt;
  pulse.t0 = center_s - 0.5 * static_cast<double>(samples) * dt;
  pulse.samples.resize(samples);
  const double decay = 2.0 * std::log(2.0) / (fwhm_s * fwhm_s);
  double energy = 0.0;
  for (std::size_t k = 0; k < samples; ++k) {
    const double t = pulse.t0 + static_cast<double>(k) * dt - center_s;
    const double amplitude = std::exp(-decay * t * t);
    pulse.samples[k] = amplitude;
    energy += amplitude * amplitude;
  }
  energy *= dt;
  const double norm = 1.0 / std::sqrt(energy);
  for (std::complex<double>& s : pulse.samples) {
    s *= norm;
  }
  validate(pulse);
  return pulse;
}

std::vector<WidthScanPoint> scan_pulse_widths(const MediumModel& medium,
                                              double carrier,
                                              const std::vector<double>& widths_s) {
  validate(medium);
  if (widths_s.empty()) {
    throw std::invalid_argument("scan_pulse_widths: widths must be non-empty");
  }
  for (std::size_t i = 0; i < widths_s.size(); ++i) {
    if (!(widths_s[i] > 0.0)) {
      throw std::invalid_argument("scan_pulse_widths: widths must be > 0");
    }
    if (i > 0 && !(widths_s[i] > widths_s[i - 1])) {
      throw std::invalid_argument("scan_pulse_widths: widths must be ascending");
    }
  }
  double gamma_min = 0.0;
  for (const SpectralLine& line : medium.lines) {
    gamma_min = (gamma_min == 0.0) ? line.gamma : std::min(gamma_min, line.gamma);
  }
  // The window must hold the pulse plus the medium response tail (ring-down
  // time 1/gamma for the narrowest line) without wrap.
  const double ring = (gamma_min > 0.0) ? 15.0 / gamma_min : 0.0;

  std::vector<WidthScanPoint> points;
  points.reserve(widths_s.size());
  for (double width : widths_s) {
    const double dt = width / 64.0;
    const double span = 12.0 * width + ring;
    std::size_t n = next_power_of_two(
        static_cast<std::size_t>(std::ceil(span / dt)));
    n = std::max<std::size_t>(n, 1024);
    const Pulse input = make_gaussian_pulse(carrier, width, dt, n, 0.0);
    const Pulse output = propagate(medium, input);
    const PropagationReport report = measure(input, output);
    points.push_back({width, report.centroid_delay_s,
                      report.centroid_delay_s / width});
  }
  return points;
}

}  // namespace fwm
