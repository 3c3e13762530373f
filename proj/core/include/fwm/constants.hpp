#pragma once

namespace fwm {

inline constexpr double speed_of_light = 299792458.0;  // m/s
inline constexpr double two_pi = 6.28318530717958647692528676656;

}  // namespace fwm
