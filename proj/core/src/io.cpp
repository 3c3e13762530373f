#include "fwm/io.hpp"

#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <system_error>

#include "fwm/constants.hpp"

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

[[noreturn]] void fail_at(const std::string& path, std::size_t line,
                          const std::string& message) {
  throw parse_error(path + ":" + std::to_string(line) + ": " + message);
}

double parse_number(const std::string& path, std::size_t line, const std::string& field) {
  const std::string text = trim(field);
  if (text.empty()) {
    fail_at(path, line, "empty numeric field");
  }
  double value = 0.0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) {
    fail_at(path, line, "malformed number '" + text + "'");
  }
  if (!std::isfinite(value)) {
    fail_at(path, line, "non-finite number '" + text + "'");
  }
  return value;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    if (pos == std::string::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw parse_error(path + ": cannot open for reading");
  }
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    lines.push_back(line);
  }
  return lines;
}

// Shared body for the two-column CSV formats.
struct Columns {
  std::vector<std::vector<double>> values;
};

Columns load_csv(const std::string& path, const std::string& header,
                 std::size_t n_columns) {
  const std::vector<std::string> lines = read_lines(path);
  if (lines.empty()) {
    throw parse_error(path + ":1: empty file, expected header '" + header + "'");
  }
  if (trim(lines[0]) != header) {
    fail_at(path, 1, "expected header '" + header + "', got '" + trim(lines[0]) + "'");
  }
  Columns out;
  out.values.resize(n_columns);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::string row = trim(lines[i]);
    if (row.empty()) {
      continue;
    }
    const std::vector<std::string> fields = split(row, ',');
    if (fields.size() != n_columns) {
      fail_at(path, i + 1,
              "expected " + std::to_string(n_columns) + " fields, got " +
                  std::to_string(fields.size()));
    }
    for (std::size_t c = 0; c < n_columns; ++c) {
      out.values[c].push_back(parse_number(path, i + 1, fields[c]));
    }
  }
  return out;
}

}  // namespace

std::string format_double(double value) {
  char buffer[64];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
  if (ec != std::errc()) {
    std::snprintf(buffer, sizeof buffer, "%.17g", value);
    return buffer;
  }
  return std::string(buffer, ptr);
}

void write_file_atomic(const std::string& path, const std::string& content) {
  const std::string temp = path + ".tmp";
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw std::runtime_error("cannot open '" + temp + "' for writing");
    }
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      throw std::runtime_error("write failed for '" + temp + "'");
    }
  }
  std::error_code ec;
  std::filesystem::rename(temp, path, ec);
  if (ec) {
    std::filesystem::remove(temp);
    throw std::runtime_error("cannot rename '" + temp + "' onto '" + path +
                             "': " + ec.message());
  }
}

void write_noise_spectrum_csv(const std::string& path, const NoiseSpectrum& spectrum) {
  if (spectrum.frequencies_hz.size() != spectrum.noise_db.size()) {
    throw std::invalid_argument("NoiseSpectrum arrays must have equal length");
  }
  std::string content = "frequency_hz,noise_db\n";
  for (std::size_t i = 0; i < spectrum.frequencies_hz.size(); ++i) {
    content += format_double(spectrum.frequencies_hz[i]);
    content += ',';
    content += format_double(spectrum.noise_db[i]);
    content += '\n';
  }
  write_file_atomic(path, content);
}

void write_pulse_csv(const std::string& path, const Pulse& pulse) {
  validate(pulse);
  std::string content = "time_s,re,im\n";
  for (std::size_t i = 0; i < pulse.samples.size(); ++i) {
    content += format_double(pulse.t0 + static_cast<double>(i) * pulse.dt);
    content += ',';
    content += format_double(pulse.samples[i].real());
    content += ',';
    content += format_double(pulse.samples[i].imag());
    content += '\n';
  }
  write_file_atomic(path, content);
}

Pulse load_pulse_csv(const std::string& path, double carrier) {
  const Columns cols = load_csv(path, "time_s,re,im", 3);
  const std::vector<double>& time = cols.values[0];
  if (time.size() < 2) {
    throw parse_error(path + ": need at least 2 samples");
  }
  Pulse pulse;
  pulse.carrier = carrier;
  pulse.t0 = time.front();
  pulse.dt = (time.back() - time.front()) / static_cast<double>(time.size() - 1);
  if (!(pulse.dt > 0.0)) {
    throw parse_error(path + ": time column must be strictly increasing");
  }
  for (std::size_t i = 1; i < time.size(); ++i) {
    const double step = time[i] - time[i - 1];
    if (std::abs(step - pulse.dt) > 1e-3 * pulse.dt) {
      throw parse_error(path + ":" + std::to_string(i + 2) +
                        ": time grid must be uniform within 0.1%");
    }
  }
  pulse.samples.resize(time.size());
  for (std::size_t i = 0; i < time.size(); ++i) {
    pulse.samples[i] = {cols.values[1][i], cols.values[2][i]};
  }
  validate(pulse);
  return pulse;
}

void write_scan_csv(const std::string& path, const ScanData& scan) {
  validate(scan);
  std::string content = "detuning_hz,transmission\n";
  for (std::size_t i = 0; i < scan.detunings_hz.size(); ++i) {
    content += format_double(scan.detunings_hz[i]);
    content += ',';
    content += format_double(scan.transmission[i]);
    content += '\n';
  }
  write_file_atomic(path, content);
}

ScanData load_scan(const std::string& path) {
  const Columns cols = load_csv(path, "detuning_hz,transmission", 2);
  ScanData scan;
  scan.detunings_hz = cols.values[0];
  scan.transmission = cols.values[1];
  try {
    validate(scan);
  } catch (const std::invalid_argument& err) {
    throw parse_error(path + ": " + err.what());
  }
  return scan;
}

void write_profile_csv(const std::string& path, const GroupIndexProfile& profile) {
  if (profile.detunings_hz.size() != profile.group_index.size()) {
    throw std::invalid_argument("GroupIndexProfile arrays must have equal length");
  }
  std::string content = "detuning_hz,group_index\n";
  for (std::size_t i = 0; i < profile.detunings_hz.size(); ++i) {
    content += format_double(profile.detunings_hz[i]);
    content += ',';
    content += format_double(profile.group_index[i]);
    content += '\n';
  }
  write_file_atomic(path, content);
}

void write_report(const std::string& path,
                  const std::vector<std::pair<std::string, std::string>>& entries) {
  std::string content;
  for (const auto& [key, value] : entries) {
    content += key;
    content += '=';
    content += value;
    content += '\n';
  }
  write_file_atomic(path, content);
}

MediumModel load_medium(const std::string& path) {
  const std::vector<std::string> lines = read_lines(path);
  MediumModel medium;
  std::optional<double> n0;
  std::optional<double> length;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::string text = lines[i];
    const auto hash = text.find('#');
    if (hash != std::string::npos) {
      text = text.substr(0, hash);
    }
    text = trim(text);
    if (text.empty()) {
      continue;
    }
    const auto eq = text.find('=');
    if (eq == std::string::npos) {
      fail_at(path, i + 1, "expected 'key = value'");
    }
    const std::string key = trim(text.substr(0, eq));
    const std::string value = trim(text.substr(eq + 1));
    if (key == "n0") {
      if (n0) {
        fail_at(path, i + 1, "duplicate key 'n0'");
      }
      n0 = parse_number(path, i + 1, value);
    } else if (key == "length_m") {
      if (length) {
        fail_at(path, i + 1, "duplicate key 'length_m'");
      }
      length = parse_number(path, i + 1, value);
    } else if (key == "line") {
      const std::vector<std::string> fields = split(value, ',');
      if (fields.size() != 3) {
        fail_at(path, i + 1, "'line' takes alpha0_per_m, center_hz, hwhm_hz");
      }
      SpectralLine line;
      line.alpha0 = parse_number(path, i + 1, fields[0]);
      line.omega0 = two_pi * parse_number(path, i + 1, fields[1]);
      line.gamma = two_pi * parse_number(path, i + 1, fields[2]);
      medium.lines.push_back(line);
    } else {
      fail_at(path, i + 1, "unknown key '" + key + "'");
    }
  }
  if (!length) {
    throw parse_error(path + ": missing required key 'length_m'");
  }
  medium.n0 = n0.value_or(1.0);
  medium.length = *length;
  try {
    validate(medium);
  } catch (const std::invalid_argument& err) {
    throw parse_error(path + ": " + err.what());
  }
  return medium;
}

void write_medium(const std::string& path, const MediumModel& medium) {
  validate(medium);
  std::string content;
  content += "n0 = " + format_double(medium.n0) + '\n';
  content += "length_m = " + format_double(medium.length) + '\n';
  for (const SpectralLine& line : medium.lines) {
    content += "line = " + format_double(line.alpha0) + ", " +
               format_double(line.omega0 / two_pi) + ", " +
               format_double(line.gamma / two_pi) + '\n';
  }
  write_file_atomic(path, content);
}

}  // namespace fwm
