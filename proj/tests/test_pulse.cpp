#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"
#include "fwm/constants.hpp"
#include "fwm/medium.hpp"
#include "fwm/pulse.hpp"

using fwm::MediumModel;
using fwm::Pulse;
using fwm::two_pi;

namespace {

MediumModel gain_line(double gain, double hwhm_hz, double center_hz = 377.1108e12,
                      double length = 0.017) {
  MediumModel m;
  m.n0 = 1.0;
  m.length = length;
  m.lines.push_back(
      {std::log(gain) / length, two_pi * center_hz, two_pi * hwhm_hz});
  return m;
}

double energy(const Pulse& p) {
  double total = 0.0;
  for (const auto& s : p.samples) {
    total += std::norm(s);
  }
  return total * p.dt;
}

}  // namespace

TEST_CASE("gaussian pulse has unit energy and the requested width") {
  const Pulse p = fwm::make_gaussian_pulse(two_pi * 377.1108e12, 100e-9, 1e-9, 1024,
                                           0.0);
  CHECK(energy(p) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(fwm::intensity_fwhm(p) == doctest::Approx(100e-9).epsilon(1e-4));
  CHECK(p.t0 == doctest::Approx(-512e-9).epsilon(1e-12));
}

TEST_CASE("vacuum propagation is the identity") {
  MediumModel vacuum;
  vacuum.n0 = 1.0;
  vacuum.length = 0.017;
  const Pulse in = fwm::make_gaussian_pulse(two_pi * 377.1108e12, 50e-9, 1e-9, 1024,
                                            0.0);
  const Pulse out = fwm::propagate(vacuum, in);
  for (std::size_t i = 0; i < in.samples.size(); ++i) {
    CHECK(std::abs(out.samples[i] - in.samples[i]) < 1e-12);
  }
  const auto report = fwm::measure(in, out);
  CHECK(std::abs(report.centroid_delay_s) < 1e-15);
  CHECK(report.energy_gain == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("narrowband pulse on a gain line: delay approaches the group delay") {
  const MediumModel m = gain_line(4.0, 1e7);
  const double carrier = m.lines[0].omega0;
  const double tau_g = m.length / fwm::speed_of_light *
                       (fwm::group_index(m, carrier) - m.n0);
  CHECK(tau_g == doctest::Approx(1.103178000763257967e-8).epsilon(1e-12));

  double previous_error = 1e9;
  for (double width : {50e-9, 100e-9, 200e-9, 400e-9}) {
    const double dt = width / 40.0;
    const Pulse in = fwm::make_gaussian_pulse(carrier, width, dt, 4096, 0.0);
    const Pulse out = fwm::propagate(m, in);
    const auto report = fwm::measure(in, out);
    CHECK(report.centroid_delay_s > 0.0);  // slow light
    const double rel_error = std::abs(report.centroid_delay_s - tau_g) / tau_g;
    CHECK(rel_error < previous_error);  // converges as the band narrows
    previous_error = rel_error;
  }
  CHECK(previous_error < 0.02);
}

TEST_CASE("absorption line advances the pulse") {
  MediumModel m;
  m.n0 = 1.0;
  m.length = 0.017;
  m.lines.push_back({-100.0, two_pi * 377.1108e12, two_pi * 1e7});
  const Pulse in =
      fwm::make_gaussian_pulse(m.lines[0].omega0, 200e-9, 5e-9, 2048, 0.0);
  const Pulse out = fwm::propagate(m, in);
  const auto report = fwm::measure(in, out);
  CHECK(report.centroid_delay_s < 0.0);  // fast light
  CHECK(report.energy_gain < 1.0);
  CHECK(report.fractional_delay ==
        doctest::Approx(report.centroid_delay_s / fwm::intensity_fwhm(in))
            .epsilon(1e-12));
}

TEST_CASE("energy gain of a narrowband pulse approaches the line transmission") {
  const MediumModel m = gain_line(4.0, 1e7);
  const Pulse in =
      fwm::make_gaussian_pulse(m.lines[0].omega0, 800e-9, 20e-9, 2048, 0.0);
  const auto report = fwm::measure(in, fwm::propagate(m, in));
  CHECK(report.energy_gain == doctest::Approx(4.0).epsilon(0.01));
}

TEST_CASE("time-shifted input gives the same delay") {
  const MediumModel m = gain_line(2.0, 1e7);
  const double carrier = m.lines[0].omega0;
  const Pulse a = fwm::make_gaussian_pulse(carrier, 100e-9, 2e-9, 2048, 0.0);
  const Pulse b = fwm::make_gaussian_pulse(carrier, 100e-9, 2e-9, 2048, 350e-9);
  const auto ra = fwm::measure(a, fwm::propagate(m, a));
  const auto rb = fwm::measure(b, fwm::propagate(m, b));
  CHECK(ra.centroid_delay_s == doctest::Approx(rb.centroid_delay_s).epsilon(1e-9));
}

TEST_CASE("propagation commutes with circular sample shifts") {
  const MediumModel m = gain_line(3.0, 2e7);
  const Pulse in = fwm::make_gaussian_pulse(m.lines[0].omega0, 80e-9, 2e-9, 1024, 0.0);
  const Pulse out = fwm::propagate(m, in);

  const std::size_t shift = 137;
  Pulse shifted = in;
  for (std::size_t i = 0; i < in.samples.size(); ++i) {
    shifted.samples[(i + shift) % in.samples.size()] = in.samples[i];
  }
  const Pulse out_shifted = fwm::propagate(m, shifted);
  double peak = 0.0;
  for (const auto& s : out.samples) {
    peak = std::max(peak, std::abs(s));
  }
  for (std::size_t i = 0; i < in.samples.size(); ++i) {
    const auto expected = out.samples[i];
    const auto got = out_shifted.samples[(i + shift) % in.samples.size()];
    CHECK(std::abs(got - expected) < 1e-10 * peak);
  }
}

TEST_CASE("grids that cannot hold the pulse spectrum are rejected") {
  const MediumModel m = gain_line(2.0, 1e7);
  // 10 ns pulse sampled at 5 ns: the envelope spectrum is far above 1e-6 of
  // its peak at the Nyquist edge.
  const Pulse coarse = fwm::make_gaussian_pulse(two_pi * 377.1108e12, 10e-9, 5e-9, 64,
                                                0.0);
  CHECK_THROWS_AS(fwm::propagate(m, coarse), std::runtime_error);
}

TEST_CASE("propagate requires a power-of-two sample count") {
  const MediumModel m = gain_line(2.0, 1e7);
  Pulse in = fwm::make_gaussian_pulse(two_pi * 377.1108e12, 100e-9, 2e-9, 1024, 0.0);
  in.samples.resize(1000);
  CHECK_THROWS_AS(fwm::propagate(m, in), std::invalid_argument);
}

TEST_CASE("pulse validation rejects malformed inputs") {
  Pulse p = fwm::make_gaussian_pulse(two_pi * 3e14, 100e-9, 2e-9, 64, 0.0);
  CHECK_NOTHROW(fwm::validate(p));
  Pulse bad = p;
  bad.dt = 0.0;
  CHECK_THROWS_AS(fwm::validate(bad), std::invalid_argument);
  bad = p;
  bad.carrier = -1.0;
  CHECK_THROWS_AS(fwm::validate(bad), std::invalid_argument);
  bad = p;
  bad.samples.assign(8, {1.0, 0.0});
  CHECK_THROWS_AS(fwm::validate(bad), std::invalid_argument);
  bad = p;
  bad.samples.assign(64, {0.0, 0.0});
  CHECK_THROWS_AS(fwm::validate(bad), std::invalid_argument);
}

TEST_CASE("measure rejects mismatched grids and zero energy") {
  const Pulse a = fwm::make_gaussian_pulse(two_pi * 3e14, 100e-9, 2e-9, 64, 0.0);
  Pulse b = a;
  b.dt = 3e-9;
  CHECK_THROWS_AS(fwm::measure(a, b), std::invalid_argument);
}

TEST_CASE("width scan on a gain line yields positive fractional delay") {
  const MediumModel m = gain_line(4.0, 1e7);
  const auto points =
      fwm::scan_pulse_widths(m, m.lines[0].omega0, {100e-9, 200e-9, 400e-9});
  REQUIRE(points.size() == 3);
  for (const auto& point : points) {
    CHECK(point.fractional_delay > 0.0);
    CHECK(point.centroid_delay_s ==
          doctest::Approx(point.fractional_delay * point.width_s).epsilon(1e-10));
  }
  // Fractional delay falls once the delay has saturated at the group delay.
  CHECK(points[2].fractional_delay < points[1].fractional_delay);
}

TEST_CASE("width scan input validation") {
  const MediumModel m = gain_line(4.0, 1e7);
  CHECK_THROWS_AS(fwm::scan_pulse_widths(m, m.lines[0].omega0, {}),
                  std::invalid_argument);
  CHECK_THROWS_AS(fwm::scan_pulse_widths(m, m.lines[0].omega0, {2e-7, 1e-7}),
                  std::invalid_argument);
  CHECK_THROWS_AS(fwm::scan_pulse_widths(m, m.lines[0].omega0, {0.0, 1e-7}),
                  std::invalid_argument);
}

TEST_CASE("transfer function carries gain and phase") {
  const MediumModel m = gain_line(4.0, 1e7);
  const double omega0 = m.lines[0].omega0;
  // At the line center the transfer magnitude squared is the intensity gain.
  const double mag = std::abs(fwm::transfer_function(m, omega0));
  CHECK(mag * mag == doctest::Approx(4.0).epsilon(1e-12));
}
