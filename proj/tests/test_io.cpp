#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "fwm/config.hpp"
#include "fwm/constants.hpp"
#include "fwm/io.hpp"
#include "fwm/pulse.hpp"

namespace {

std::string temp_path(const char* name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

void write_text(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << content;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("format_double round-trips exactly") {
  for (double value : {0.0, 1.0, -1.0, 0.1, 2.0 / 3.0, 3.141592653589793,
                       1e300, 1e-300, 377.1108e12, -6.3262479610058479404e-8}) {
    const std::string text = fwm::format_double(value);
    CHECK(std::strtod(text.c_str(), nullptr) == value);
  }
  CHECK(fwm::format_double(1.0) == "1");
  CHECK(fwm::format_double(0.5) == "0.5");
}

TEST_CASE("atomic writes replace content without leftovers") {
  const std::string path = temp_path("fwm_test_atomic.txt");
  fwm::write_file_atomic(path, "first\n");
  CHECK(read_text(path) == "first\n");
  fwm::write_file_atomic(path, "second\n");
  CHECK(read_text(path) == "second\n");
  CHECK(!std::filesystem::exists(path + ".tmp"));
}

TEST_CASE("medium files round-trip bitwise") {
  fwm::MediumModel m;
  m.n0 = 1.0000002;
  m.length = 0.017;
  m.lines.push_back({-150.0, fwm::two_pi * 377.107e12, fwm::two_pi * 3e8});
  m.lines.push_back({81.546727124699448, fwm::two_pi * 377.1108e12,
                     fwm::two_pi * 1e7});
  const std::string path = temp_path("fwm_test_medium.conf");
  fwm::write_medium(path, m);
  const fwm::MediumModel loaded = fwm::load_medium(path);
  CHECK(loaded.n0 == m.n0);
  CHECK(loaded.length == m.length);
  REQUIRE(loaded.lines.size() == m.lines.size());
  for (std::size_t i = 0; i < m.lines.size(); ++i) {
    CHECK(loaded.lines[i].alpha0 == m.lines[i].alpha0);
    CHECK(loaded.lines[i].omega0 == m.lines[i].omega0);
    CHECK(loaded.lines[i].gamma == m.lines[i].gamma);
  }
}

TEST_CASE("medium parser reports the offending line") {
  const std::string path = temp_path("fwm_test_medium_bad.conf");

  write_text(path, "length_m = 0.017\nline = 10, 3.77e14\n");
  CHECK_THROWS_WITH_AS(fwm::load_medium(path), doctest::Contains(":2:"),
                       fwm::parse_error);

  write_text(path, "length_m = 0.017\nlength_m = 0.02\n");
  CHECK_THROWS_WITH_AS(fwm::load_medium(path), doctest::Contains("duplicate"),
                       fwm::parse_error);

  write_text(path, "length_m = 0.017\nrefractive_index = 1\n");
  CHECK_THROWS_WITH_AS(fwm::load_medium(path), doctest::Contains("unknown key"),
                       fwm::parse_error);

  write_text(path, "n0 = 1\n");
  CHECK_THROWS_WITH_AS(fwm::load_medium(path), doctest::Contains("length_m"),
                       fwm::parse_error);

  // Comments and blank lines are fine; n0 defaults to 1.
  write_text(path, "# cell\n\nlength_m = 0.017   # meters\n");
  const fwm::MediumModel m = fwm::load_medium(path);
  CHECK(m.n0 == 1.0);
  CHECK(m.lines.empty());
}

TEST_CASE("pulse csv round-trips") {
  const fwm::Pulse p =
      fwm::make_gaussian_pulse(fwm::two_pi * 377.1108e12, 100e-9, 2e-9, 64, 0.0);
  const std::string path = temp_path("fwm_test_pulse.csv");
  fwm::write_pulse_csv(path, p);
  const fwm::Pulse loaded = fwm::load_pulse_csv(path, p.carrier);
  CHECK(loaded.carrier == p.carrier);
  CHECK(loaded.t0 == doctest::Approx(p.t0).epsilon(1e-12));
  CHECK(loaded.dt == doctest::Approx(p.dt).epsilon(1e-9));
  REQUIRE(loaded.samples.size() == p.samples.size());
  for (std::size_t i = 0; i < p.samples.size(); ++i) {
    CHECK(loaded.samples[i] == p.samples[i]);
  }
}

TEST_CASE("report files are plain ordered key=value lines") {
  const std::string path = temp_path("fwm_test_report.txt");
  fwm::write_report(path, {{"alpha", "1"}, {"beta", "two"}});
  CHECK(read_text(path) == "alpha=1\nbeta=two\n");
}

TEST_CASE("run config parses a complete file") {
  const std::string path = temp_path("fwm_test_run.conf");
  write_text(path,
             "medium.file = medium.conf\n"
             "source.pump_hz = 377.1078e12\n"
             "source.one_photon_detuning_hz = 0.8e9\n"
             "source.two_photon_detuning_hz = 4e6\n"
             "source.probe_hz = 377.1108e12\n"
             "amp.gain = 4\n"
             "amp.seed_flux = 1e6\n"
             "loss.eta_probe = 0.9\n"
             "loss.eta_conjugate = 0.85\n"
             "spectrum.delay_s = 2e-7\n"
             "grid.start_hz = 1e4\n"
             "grid.stop_hz = 2e6\n"
             "grid.points = 200\n"
             "grid.scale = log\n"
             "pulse.carrier_hz = 377.1108e12\n"
             "pulse.fwhm_s = 1e-7\n"
             "pulse.dt_s = 2e-9\n"
             "pulse.samples = 1024\n"
             "pulse.center_s = 0\n"
             "fit.n_lines = 2\n"
             "fit.seed_centers_hz = -1e7, 2e7\n"
             "fit.length_m = 0.017\n"
             "fit.reference_hz = 377.1108e12\n"
             "scan.reference_hz = 377.1108e12\n"
             "scan.noise_fraction = 0.01\n"
             "analyze.scan_file = scan.csv\n"
             "output.dir = out\n");
  const fwm::RunConfig config = fwm::load_run_config(path);
  REQUIRE(config.source.has_value());
  CHECK(config.source->two_photon_detuning_hz == 4e6);
  REQUIRE(config.amp.has_value());
  CHECK(config.amp->gain == 4.0);
  REQUIRE(config.loss.has_value());
  CHECK(config.loss->eta_conjugate == 0.85);
  REQUIRE(config.delay_override_s.has_value());
  CHECK(*config.delay_override_s == 2e-7);
  REQUIRE(config.grid.has_value());
  CHECK(config.grid->log_scale);
  REQUIRE(config.pulse.has_value());
  CHECK(config.pulse->samples == 1024);
  REQUIRE(config.fit.has_value());
  REQUIRE(config.fit->seed_centers_hz.size() == 2);
  CHECK(config.fit->seed_centers_hz[1] == 2e7);
  REQUIRE(config.scan.has_value());
  CHECK(config.scan->noise_fraction == 0.01);
  CHECK(config.analyze_scan_file == "scan.csv");
  CHECK(config.output_dir == "out");
}

TEST_CASE("run config rejects malformed input with the offending key") {
  const std::string path = temp_path("fwm_test_run_bad.conf");

  write_text(path, "amp.gain = 4\n");
  CHECK_THROWS_WITH_AS(fwm::load_run_config(path),
                       doctest::Contains("amp.seed_flux"), fwm::config_error);

  write_text(path, "amp.gain = 4\namp.seed_flux = 1e6\namp.gain = 2\n");
  CHECK_THROWS_WITH_AS(fwm::load_run_config(path), doctest::Contains("duplicate"),
                       fwm::config_error);

  write_text(path, "amp.hustle = 4\n");
  CHECK_THROWS_WITH_AS(fwm::load_run_config(path),
                       doctest::Contains("unknown key 'amp.hustle'"),
                       fwm::config_error);

  write_text(path, "amp.gain = fast\namp.seed_flux = 1e6\n");
  CHECK_THROWS_WITH_AS(fwm::load_run_config(path), doctest::Contains("amp.gain"),
                       fwm::config_error);

  write_text(path, "grid.start_hz = 10\ngrid.stop_hz = 5\ngrid.points = 100\n");
  CHECK_THROWS_AS(fwm::load_run_config(path), fwm::config_error);

  write_text(path, "grid.start_hz = -1\ngrid.stop_hz = 5\ngrid.points = 100\n"
                   "grid.scale = log\n");
  CHECK_THROWS_AS(fwm::load_run_config(path), fwm::config_error);

  write_text(path, "pulse.carrier_hz = 3e14\npulse.fwhm_s = 1e-7\n"
                   "pulse.dt_s = 2e-9\npulse.samples = 1000\n");
  CHECK_THROWS_WITH_AS(fwm::load_run_config(path),
                       doctest::Contains("power of two"), fwm::config_error);

  write_text(path, "pulse.carrier_hz = 3e14\npulse.file = a.csv\n"
                   "pulse.fwhm_s = 1e-7\n");
  CHECK_THROWS_WITH_AS(fwm::load_run_config(path),
                       doctest::Contains("conflicts"), fwm::config_error);

  write_text(path, "fit.n_lines = 2\nfit.seed_centers_hz = 1e6\n"
                   "fit.length_m = 0.017\nfit.reference_hz = 3e14\n");
  CHECK_THROWS_WITH_AS(fwm::load_run_config(path),
                       doctest::Contains("fit.seed_centers_hz"),
                       fwm::config_error);

  write_text(path, "scan.noise_fraction = 0.01\n");
  CHECK_THROWS_AS(fwm::load_run_config(path), fwm::config_error);

  write_text(path, "just some text\n");
  CHECK_THROWS_WITH_AS(fwm::load_run_config(path),
                       doctest::Contains("key = value"), fwm::config_error);
}

TEST_CASE("pulse file spec needs only the carrier") {
  const std::string path = temp_path("fwm_test_run_pulsefile.conf");
  write_text(path, "pulse.carrier_hz = 3e14\npulse.file = envelope.csv\n");
  const fwm::RunConfig config = fwm::load_run_config(path);
  REQUIRE(config.pulse.has_value());
  REQUIRE(config.pulse->file.has_value());
  CHECK(*config.pulse->file == "envelope.csv");
}

TEST_CASE("referenced files are checked against the config directory") {
  const auto dir = std::filesystem::temp_directory_path() / "fwm_test_refdir";
  std::filesystem::create_directories(dir);
  write_text((dir / "medium.conf").string(), "length_m = 0.017\n");

  fwm::RunConfig config;
  config.medium_file = "medium.conf";
  CHECK_NOTHROW(fwm::validate_referenced_files(config, dir.string()));
  config.medium_file = "missing.conf";
  CHECK_THROWS_AS(fwm::validate_referenced_files(config, dir.string()),
                  fwm::config_error);
}

TEST_CASE("noise spectrum csv uses the pinned header") {
  fwm::NoiseSpectrum spectrum;
  spectrum.frequencies_hz = {1e4, 2e4};
  spectrum.noise_db = {-5.25, -5.0};
  const std::string path = temp_path("fwm_test_noise.csv");
  fwm::write_noise_spectrum_csv(path, spectrum);
  CHECK(read_text(path) == "frequency_hz,noise_db\n10000,-5.25\n20000,-5\n");
}
