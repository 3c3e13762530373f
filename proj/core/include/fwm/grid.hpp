#pragma once

#include <vector>

namespace fwm {

// Uniform or logarithmic sampling grid in ordinary frequency (Hz). Detuning
// grids may be negative (linear scale only); log grids need 0 < start < stop.
struct FrequencyGrid {
  double start_hz = 0.0;
  double stop_hz = 0.0;
  int points = 0;       // >= 2
  bool log_scale = false;
};

void validate(const FrequencyGrid& grid);

std::vector<double> make_grid(const FrequencyGrid& grid);

}  // namespace fwm
