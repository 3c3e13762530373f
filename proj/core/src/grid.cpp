#include "fwm/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace fwm {

void validate(const FrequencyGrid& grid) {
  if (!std::isfinite(grid.start_hz) || !std::isfinite(grid.stop_hz)) {
    throw std::invalid_argument("FrequencyGrid bounds must be finite");
  }
  if (!(grid.start_hz < grid.stop_hz)) {
    throw std::invalid_argument("FrequencyGrid requires start_hz < stop_hz");
  }
  if (grid.points < 2) {
    throw std::invalid_argument("FrequencyGrid needs at least 2 points");
  }
  if (grid.log_scale && !(grid.start_hz > 0.0)) {
    throw std::invalid_argument("log FrequencyGrid requires start_hz > 0");
  }
}

std::vector<double> make_grid(const FrequencyGrid& grid) {
  validate(grid);
  std::vector<double> values(static_cast<std::size_t>(grid.points));
  const double n = static_cast<double>(grid.points - 1);
  if (grid.log_scale) {
    const double ratio = std::log(grid.stop_hz / grid.start_hz);
    for (int i = 0; i < grid.points; ++i) {
      values[static_cast<std::size_t>(i)] =
          grid.start_hz * std::exp(ratio * static_cast<double>(i) / n);
    }
  } else {
    for (int i = 0; i < grid.points; ++i) {
      values[static_cast<std::size_t>(i)] =
          grid.start_hz + (grid.stop_hz - grid.start_hz) * static_cast<double>(i) / n;
    }
  }
  values.front() = grid.start_hz;
  values.back() = grid.stop_hz;
  return values;
}

}  // namespace fwm
