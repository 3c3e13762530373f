#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fwm/medium.hpp"
#include "fwm/pulse.hpp"
#include "fwm/scan.hpp"
#include "fwm/twin_beam.hpp"

namespace fwm {

// File-content error; messages name the file and the 1-based line number.
class parse_error : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Shortest decimal representation that round-trips the exact double.
std::string format_double(double value);

// All writers are atomic: content goes to a sibling temporary file which is
// renamed over the target, so readers never observe partial output.
void write_file_atomic(const std::string& path, const std::string& content);

// CSV, header "frequency_hz,noise_db".
void write_noise_spectrum_csv(const std::string& path, const NoiseSpectrum& spectrum);

// CSV, header "time_s,re,im". The carrier is not persisted; the loader takes
// it from the caller. Loaded grids must be uniform within 0.1 %.
void write_pulse_csv(const std::string& path, const Pulse& pulse);
Pulse load_pulse_csv(const std::string& path, double carrier);

// CSV, header "detuning_hz,transmission" (reader is load_scan in scan.hpp).
void write_scan_csv(const std::string& path, const ScanData& scan);

// CSV, header "detuning_hz,group_index".
void write_profile_csv(const std::string& path, const GroupIndexProfile& profile);

// Plain "key=value" report lines, one pair per line, written in order.
void write_report(const std::string& path,
                  const std::vector<std::pair<std::string, std::string>>& entries);

// Medium definition file: "key = value" lines, '#' comments, keys n0 (optional,
// default 1.0), length_m (required), and one "line = alpha0_per_m, center_hz,
// hwhm_hz" per spectral line. Unknown or duplicate scalar keys are errors.
MediumModel load_medium(const std::string& path);
void write_medium(const std::string& path, const MediumModel& medium);

}  // namespace fwm
