#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fwm/grid.hpp"

namespace fwm {

// Configuration-content error (unknown key, missing field, bad value, missing
// referenced file). Distinct from numerical failures for exit-code mapping.
class config_error : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Config-file side of SourceConfig, in Hz (converted to rad/s at use).
struct SourceSpec {
  double pump_hz = 0.0;
  double one_photon_detuning_hz = 0.0;
  double two_photon_detuning_hz = 0.0;
  double probe_hz = 0.0;
};

struct AmplifierSpec {
  double gain = 1.0;
  double seed_flux = 0.0;
};

struct LossSpec {
  double eta_probe = 1.0;
  double eta_conjugate = 1.0;
};

struct PulseSpec {
  double carrier_hz = 0.0;
  double fwhm_s = 0.0;
  double dt_s = 0.0;
  int samples = 0;
  double center_s = 0.0;
  std::optional<std::string> file;  // input envelope CSV; overrides the Gaussian spec
};

struct FitSpec {
  int n_lines = 0;
  std::vector<double> seed_centers_hz;
  double length_m = 0.0;
  double reference_hz = 0.0;
};

struct ScanSpec {
  double reference_hz = 0.0;
  double noise_fraction = 0.0;
};

// Flat key-value run configuration with section prefixes (medium., source.,
// amp., loss., spectrum., grid., pulse., fit., scan., analyze., output.).
// Parsing is strict: unknown keys, duplicate keys, malformed values and
// incomplete sections are errors naming the key. Each command requires the
// sections it uses; unrelated sections may coexist in one file.
struct RunConfig {
  std::optional<std::string> medium_file;
  std::optional<SourceSpec> source;
  std::optional<AmplifierSpec> amp;
  std::optional<LossSpec> loss;
  std::optional<double> delay_override_s;  // spectrum.delay_s; else delay_from_media
  std::optional<FrequencyGrid> grid;
  std::optional<PulseSpec> pulse;
  std::optional<FitSpec> fit;
  std::optional<ScanSpec> scan;
  std::optional<std::string> analyze_scan_file;
  std::optional<std::string> output_dir;
};

RunConfig load_run_config(const std::string& path);

// Check that every file the config references exists; throws config_error.
void validate_referenced_files(const RunConfig& config,
                               const std::string& base_dir);

}  // namespace fwm
