#pragma once

#include "fwm/medium.hpp"

namespace fwm {

// Demonstration medium modeled on a hot-vapor four-wave-mixing source on the
// Rb D1 line: a strong absorption doublet split by the ground-state hyperfine
// interval, a gain line at the probe and a weaker gain line at the conjugate.
// The pump sits blue of the higher-frequency absorption line; probe and
// conjugate sit symmetrically 3 GHz to either side of the pump. All values
// are illustrative defaults and freely overridable.
struct DemoMediumParams {
  double reference_hz = 377.107e12;      // higher-frequency absorption line center
  double ground_splitting_hz = 3.035e9;  // absorption doublet separation
  double pump_offset_hz = 0.8e9;         // pump detuning blue of the reference line
  double probe_offset_hz = 3.0e9;        // probe offset blue of the pump
  double absorption_alpha0 = -150.0;     // 1/m
  double absorption_hwhm_hz = 300.0e6;
  double probe_gain = 4.0;               // intensity gain at the probe line center
  double conjugate_gain = 2.0;           // intensity gain at the conjugate line center
  double gain_hwhm_hz = 10.0e6;
  double n0 = 1.0;
  double length_m = 0.017;
};

MediumModel demo_medium(const DemoMediumParams& params = {});
SourceConfig demo_source(const DemoMediumParams& params = {});

}  // namespace fwm
