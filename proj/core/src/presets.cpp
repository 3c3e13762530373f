#include "fwm/presets.hpp"

#include <cmath>

#include "fwm/constants.hpp"

namespace fwm {

MediumModel demo_medium(const DemoMediumParams& params) {
  MediumModel medium;
  medium.n0 = params.n0;
  medium.length = params.length_m;

  const double absorption_gamma = two_pi * params.absorption_hwhm_hz;
  const double gain_gamma = two_pi * params.gain_hwhm_hz;
  const double pump_hz = params.reference_hz + params.pump_offset_hz;

  medium.lines.push_back({params.absorption_alpha0, two_pi * params.reference_hz,
                          absorption_gamma});
  medium.lines.push_back(
      {params.absorption_alpha0,
       two_pi * (params.reference_hz - params.ground_splitting_hz), absorption_gamma});
  // alpha0 = ln(G) / L makes the line-center intensity transmission equal G.
  medium.lines.push_back({std::log(params.probe_gain) / params.length_m,
                          two_pi * (pump_hz + params.probe_offset_hz), gain_gamma});
  medium.lines.push_back({std::log(params.conjugate_gain) / params.length_m,
                          two_pi * (pump_hz - params.probe_offset_hz), gain_gamma});
  validate(medium);
  return medium;
}

SourceConfig demo_source(const DemoMediumParams& params) {
  SourceConfig source;
  source.pump = two_pi * (params.reference_hz + params.pump_offset_hz);
  source.one_photon_detuning = two_pi * params.pump_offset_hz;
  source.two_photon_detuning = 0.0;
  source.probe = source.pump + two_pi * params.probe_offset_hz;
  validate(source);
  return source;
}

}  // namespace fwm
