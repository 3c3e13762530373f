#include "fwm/config.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>

namespace fwm {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) {
    return "";
  }
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

struct RawConfig {
  std::string path;
  std::map<std::string, std::pair<std::string, std::size_t>> entries;  // key -> (value, line)

  [[noreturn]] void fail(const std::string& key, const std::string& message) const {
    const auto it = entries.find(key);
    if (it != entries.end()) {
      throw config_error(path + ":" + std::to_string(it->second.second) + ": " +
                         message);
    }
    throw config_error(path + ": " + message);
  }

  bool has(const std::string& key) const { return entries.count(key) != 0; }

  std::string text(const std::string& key) const { return entries.at(key).first; }

  double number(const std::string& key) const {
    const std::string value = text(key);
    double parsed = 0.0;
    const char* begin = value.data();
    const char* end = begin + value.size();
    const auto [ptr, ec] = std::from_chars(begin, end, parsed);
    if (ec != std::errc() || ptr != end || !std::isfinite(parsed)) {
      fail(key, "malformed number '" + value + "' for key '" + key + "'");
    }
    return parsed;
  }

  int integer(const std::string& key) const {
    const std::string value = text(key);
    int parsed = 0;
    const char* begin = value.data();
    const char* end = begin + value.size();
    const auto [ptr, ec] = std::from_chars(begin, end, parsed);
    if (ec != std::errc() || ptr != end) {
      fail(key, "malformed integer '" + value + "' for key '" + key + "'");
    }
    return parsed;
  }

  std::vector<double> number_list(const std::string& key) const {
    const std::string value = text(key);
    std::vector<double> out;
    std::size_t start = 0;
    while (start <= value.size()) {
      const auto pos = value.find(',', start);
      const std::string field =
          trim(pos == std::string::npos ? value.substr(start)
                                        : value.substr(start, pos - start));
      if (field.empty()) {
        fail(key, "empty list element for key '" + key + "'");
      }
      double parsed = 0.0;
      const char* begin = field.data();
      const char* end = begin + field.size();
      const auto [ptr, ec] = std::from_chars(begin, end, parsed);
      if (ec != std::errc() || ptr != end || !std::isfinite(parsed)) {
        fail(key, "malformed number '" + field + "' in list for key '" + key + "'");
      }
      out.push_back(parsed);
      if (pos == std::string::npos) {
        break;
      }
      start = pos + 1;
    }
    return out;
  }
};

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "medium.file",
      "source.pump_hz",
      "source.one_photon_detuning_hz",
      "source.two_photon_detuning_hz",
      "source.probe_hz",
      "amp.gain",
      "amp.seed_flux",
      "loss.eta_probe",
      "loss.eta_conjugate",
      "spectrum.delay_s",
      "grid.start_hz",
      "grid.stop_hz",
      "grid.points",
      "grid.scale",
      "pulse.carrier_hz",
      "pulse.fwhm_s",
      "pulse.dt_s",
      "pulse.samples",
      "pulse.center_s",
      "pulse.file",
      "fit.n_lines",
      "fit.seed_centers_hz",
      "fit.length_m",
      "fit.reference_hz",
      "scan.reference_hz",
      "scan.noise_fraction",
      "analyze.scan_file",
      "output.dir",
  };
  return keys;
}

RawConfig parse_raw(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw config_error(path + ": cannot open for reading");
  }
  RawConfig raw;
  raw.path = path;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) {
      line = line.substr(0, hash);
    }
    const std::string text = trim(line);
    if (text.empty()) {
      continue;
    }
    const auto eq = text.find('=');
    if (eq == std::string::npos) {
      throw config_error(path + ":" + std::to_string(line_no) +
                         ": expected 'key = value'");
    }
    const std::string key = trim(text.substr(0, eq));
    const std::string value = trim(text.substr(eq + 1));
    if (known_keys().count(key) == 0) {
      throw config_error(path + ":" + std::to_string(line_no) + ": unknown key '" +
                         key + "'");
    }
    if (raw.entries.count(key) != 0) {
      throw config_error(path + ":" + std::to_string(line_no) + ": duplicate key '" +
                         key + "'");
    }
    if (value.empty()) {
      throw config_error(path + ":" + std::to_string(line_no) + ": empty value for '" +
                         key + "'");
    }
    raw.entries.emplace(key, std::make_pair(value, line_no));
  }
  return raw;
}

// Require that either every listed key is present or none is; returns true
// when the section is present.
bool section_present(const RawConfig& raw, const std::string& section,
                     const std::vector<std::string>& required) {
  std::size_t found = 0;
  for (const std::string& key : required) {
    if (raw.has(key)) {
      ++found;
    }
  }
  if (found == 0) {
    return false;
  }
  for (const std::string& key : required) {
    if (!raw.has(key)) {
      throw config_error(raw.path + ": section '" + section + "' is missing key '" +
                         key + "'");
    }
  }
  return true;
}

bool positive_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

}  // namespace

RunConfig load_run_config(const std::string& path) {
  const RawConfig raw = parse_raw(path);
  RunConfig config;

  if (raw.has("medium.file")) {
    config.medium_file = raw.text("medium.file");
  }

  if (section_present(raw, "source",
                      {"source.pump_hz", "source.one_photon_detuning_hz",
                       "source.two_photon_detuning_hz", "source.probe_hz"})) {
    SourceSpec source;
    source.pump_hz = raw.number("source.pump_hz");
    source.one_photon_detuning_hz = raw.number("source.one_photon_detuning_hz");
    source.two_photon_detuning_hz = raw.number("source.two_photon_detuning_hz");
    source.probe_hz = raw.number("source.probe_hz");
    if (!(source.pump_hz > 0.0)) {
      raw.fail("source.pump_hz", "source.pump_hz must be > 0");
    }
    if (!(source.probe_hz > 0.0)) {
      raw.fail("source.probe_hz", "source.probe_hz must be > 0");
    }
    config.source = source;
  }

  if (section_present(raw, "amp", {"amp.gain", "amp.seed_flux"})) {
    AmplifierSpec amp;
    amp.gain = raw.number("amp.gain");
    amp.seed_flux = raw.number("amp.seed_flux");
    if (!(amp.gain >= 1.0)) {
      raw.fail("amp.gain", "amp.gain must be >= 1");
    }
    if (amp.seed_flux < 0.0) {
      raw.fail("amp.seed_flux", "amp.seed_flux must be >= 0");
    }
    config.amp = amp;
  }

  if (section_present(raw, "loss", {"loss.eta_probe", "loss.eta_conjugate"})) {
    LossSpec loss;
    loss.eta_probe = raw.number("loss.eta_probe");
    loss.eta_conjugate = raw.number("loss.eta_conjugate");
    for (const auto& [key, value] :
         {std::pair<std::string, double>{"loss.eta_probe", loss.eta_probe},
          {"loss.eta_conjugate", loss.eta_conjugate}}) {
      if (!(value > 0.0) || value > 1.0) {
        raw.fail(key, key + " must be in (0, 1]");
      }
    }
    config.loss = loss;
  }

  if (raw.has("spectrum.delay_s")) {
    config.delay_override_s = raw.number("spectrum.delay_s");
  }

  if (section_present(raw, "grid", {"grid.start_hz", "grid.stop_hz", "grid.points"})) {
    FrequencyGrid grid;
    grid.start_hz = raw.number("grid.start_hz");
    grid.stop_hz = raw.number("grid.stop_hz");
    grid.points = raw.integer("grid.points");
    if (raw.has("grid.scale")) {
      const std::string scale = raw.text("grid.scale");
      if (scale == "log") {
        grid.log_scale = true;
      } else if (scale != "linear") {
        raw.fail("grid.scale", "grid.scale must be 'linear' or 'log'");
      }
    }
    try {
      validate(grid);
    } catch (const std::invalid_argument& err) {
      raw.fail("grid.start_hz", err.what());
    }
    config.grid = grid;
  } else if (raw.has("grid.scale")) {
    raw.fail("grid.scale", "grid.scale given without the rest of the grid section");
  }

  const bool pulse_file = raw.has("pulse.file");
  const std::vector<std::string> pulse_keys =
      pulse_file ? std::vector<std::string>{"pulse.carrier_hz"}
                 : std::vector<std::string>{"pulse.carrier_hz", "pulse.fwhm_s",
                                            "pulse.dt_s", "pulse.samples"};
  if (section_present(raw, "pulse", pulse_keys) || pulse_file) {
    PulseSpec pulse;
    if (pulse_file && !raw.has("pulse.carrier_hz")) {
      throw config_error(raw.path + ": section 'pulse' is missing key 'pulse.carrier_hz'");
    }
    pulse.carrier_hz = raw.number("pulse.carrier_hz");
    if (!(pulse.carrier_hz > 0.0)) {
      raw.fail("pulse.carrier_hz", "pulse.carrier_hz must be > 0");
    }
    if (pulse_file) {
      pulse.file = raw.text("pulse.file");
      for (const char* key : {"pulse.fwhm_s", "pulse.dt_s", "pulse.samples"}) {
        if (raw.has(key)) {
          raw.fail(key, std::string("'") + key + "' conflicts with pulse.file");
        }
      }
    } else {
      pulse.fwhm_s = raw.number("pulse.fwhm_s");
      pulse.dt_s = raw.number("pulse.dt_s");
      pulse.samples = raw.integer("pulse.samples");
      if (!(pulse.fwhm_s > 0.0)) {
        raw.fail("pulse.fwhm_s", "pulse.fwhm_s must be > 0");
      }
      if (!(pulse.dt_s > 0.0)) {
        raw.fail("pulse.dt_s", "pulse.dt_s must be > 0");
      }
      if (pulse.samples < 16 || !positive_power_of_two(pulse.samples)) {
        raw.fail("pulse.samples", "pulse.samples must be a power of two >= 16");
      }
    }
    if (raw.has("pulse.center_s")) {
      pulse.center_s = raw.number("pulse.center_s");
    }
    config.pulse = pulse;
  } else if (raw.has("pulse.center_s")) {
    raw.fail("pulse.center_s", "pulse.center_s given without the rest of the pulse section");
  }

  if (section_present(raw, "fit",
                      {"fit.n_lines", "fit.seed_centers_hz", "fit.length_m",
                       "fit.reference_hz"})) {
    FitSpec fit;
    fit.n_lines = raw.integer("fit.n_lines");
    fit.seed_centers_hz = raw.number_list("fit.seed_centers_hz");
    fit.length_m = raw.number("fit.length_m");
    fit.reference_hz = raw.number("fit.reference_hz");
    if (fit.n_lines < 1) {
      raw.fail("fit.n_lines", "fit.n_lines must be >= 1");
    }
    if (fit.seed_centers_hz.size() != static_cast<std::size_t>(fit.n_lines)) {
      raw.fail("fit.seed_centers_hz",
               "fit.seed_centers_hz must list exactly fit.n_lines values");
    }
    if (!(fit.length_m > 0.0)) {
      raw.fail("fit.length_m", "fit.length_m must be > 0");
    }
    if (!(fit.reference_hz > 0.0)) {
      raw.fail("fit.reference_hz", "fit.reference_hz must be > 0");
    }
    config.fit = fit;
  }

  if (section_present(raw, "scan", {"scan.reference_hz"})) {
    ScanSpec scan;
    scan.reference_hz = raw.number("scan.reference_hz");
    if (!(scan.reference_hz > 0.0)) {
      raw.fail("scan.reference_hz", "scan.reference_hz must be > 0");
    }
    if (raw.has("scan.noise_fraction")) {
      scan.noise_fraction = raw.number("scan.noise_fraction");
      if (scan.noise_fraction < 0.0 || scan.noise_fraction >= 0.5) {
        raw.fail("scan.noise_fraction", "scan.noise_fraction must be in [0, 0.5)");
      }
    }
    config.scan = scan;
  } else if (raw.has("scan.noise_fraction")) {
    raw.fail("scan.noise_fraction",
             "scan.noise_fraction given without scan.reference_hz");
  }

  if (raw.has("analyze.scan_file")) {
    config.analyze_scan_file = raw.text("analyze.scan_file");
  }
  if (raw.has("output.dir")) {
    config.output_dir = raw.text("output.dir");
  }
  return config;
}

void validate_referenced_files(const RunConfig& config, const std::string& base_dir) {
  const auto resolve = [&](const std::string& file) {
    std::filesystem::path p(file);
    if (p.is_relative()) {
      p = std::filesystem::path(base_dir) / p;
    }
    return p;
  };
  const auto check = [&](const std::optional<std::string>& file, const char* what) {
    if (!file) {
      return;
    }
    if (!std::filesystem::exists(resolve(*file))) {
      throw config_error(std::string(what) + " '" + *file + "' does not exist");
    }
  };
  check(config.medium_file, "medium.file");
  check(config.analyze_scan_file, "analyze.scan_file");
  if (config.pulse) {
    check(config.pulse->file, "pulse.file");
  }
}

}  // namespace fwm
