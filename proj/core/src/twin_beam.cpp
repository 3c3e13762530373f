#include "fwm/twin_beam.hpp"

#include <cmath>
#include <stdexcept>

#include "fwm/constants.hpp"

namespace fwm {

void validate(const AmplifierParams& params) {
  if (!std::isfinite(params.gain) || !std::isfinite(params.seed_flux)) {
    throw std::invalid_argument("AmplifierParams fields must be finite");
  }
  if (params.gain < 1.0) {
    throw std::domain_error("AmplifierParams.gain must be >= 1");
  }
  if (params.seed_flux <= 0.0) {
    throw std::invalid_argument("AmplifierParams.seed_flux must be > 0");
  }
}

void validate(const ChannelLosses& losses) {
  for (double eta : {losses.eta_probe, losses.eta_conjugate}) {
    if (!std::isfinite(eta) || eta <= 0.0 || eta > 1.0) {
      throw std::invalid_argument("ChannelLosses transmissions must be in (0, 1]");
    }
  }
}

void validate(const TwinBeamState& state) {
  for (double v : {state.mean_probe, state.mean_conjugate, state.var_probe,
                   state.var_conjugate, state.covar}) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("TwinBeamState fields must be finite");
    }
  }
  if (state.mean_probe < 0.0 || state.mean_conjugate < 0.0) {
    throw std::invalid_argument("TwinBeamState means must be >= 0");
  }
  if (state.var_probe < 0.0 || state.var_conjugate < 0.0) {
    throw std::invalid_argument("TwinBeamState variances must be >= 0");
  }
  const double bound = state.var_probe * state.var_conjugate;
  // Tiny relative slack admits states that saturate Cauchy-Schwarz up to
  // rounding.
  if (state.covar * state.covar > bound * (1.0 + 1e-12) + 1e-300) {
    throw std::invalid_argument(
        "TwinBeamState.covar violates covar^2 <= var_probe * var_conjugate");
  }
}

void validate(const NoiseSpectrum& spectrum) {
  if (spectrum.frequencies_hz.size() != spectrum.noise_db.size()) {
    throw std::invalid_argument("NoiseSpectrum arrays must have equal length");
  }
  for (std::size_t i = 1; i < spectrum.frequencies_hz.size(); ++i) {
    if (!(spectrum.frequencies_hz[i] > spectrum.frequencies_hz[i - 1])) {
      throw std::invalid_argument(
          "NoiseSpectrum.frequencies_hz must be strictly increasing");
    }
  }
}

TwinBeamState amplify(const AmplifierParams& params) {
  validate(params);
  const double g = params.gain;
  const double n0 = params.seed_flux;
  TwinBeamState state;
  state.mean_probe = g * n0;
  state.mean_conjugate = (g - 1.0) * n0;
  state.var_probe = g * (2.0 * g - 1.0) * n0;
  state.var_conjugate = (g - 1.0) * (2.0 * g - 1.0) * n0;
  state.covar = 2.0 * g * (g - 1.0) * n0;
  return state;
}

TwinBeamState apply_losses(const TwinBeamState& state, const ChannelLosses& losses) {
  validate(state);
  validate(losses);
  const double ep = losses.eta_probe;
  const double ec = losses.eta_conjugate;
  TwinBeamState out;
  out.mean_probe = ep * state.mean_probe;
  out.mean_conjugate = ec * state.mean_conjugate;
  out.var_probe = ep * ep * (state.var_probe - state.mean_probe) + ep * state.mean_probe;
  out.var_conjugate =
      ec * ec * (state.var_conjugate - state.mean_conjugate) + ec * state.mean_conjugate;
  out.covar = ep * ec * state.covar;
  return out;
}

double difference_noise_db(const TwinBeamState& state) {
  validate(state);
  const double total = state.mean_probe + state.mean_conjugate;
  if (total <= 0.0) {
    throw std::domain_error("difference_noise_db: total mean flux must be > 0");
  }
  const double variance = state.var_probe + state.var_conjugate - 2.0 * state.covar;
  return 10.0 * std::log10(variance / total);
}

NoiseSpectrum squeezing_spectrum(const TwinBeamState& state,
                                 const std::vector<double>& frequencies_hz,
                                 double delay_s) {
  validate(state);
  if (!std::isfinite(delay_s)) {
    throw std::invalid_argument("squeezing_spectrum: delay_s must be finite");
  }
  const double total = state.mean_probe + state.mean_conjugate;
  if (total <= 0.0) {
    throw std::domain_error("squeezing_spectrum: total mean flux must be > 0");
  }
  for (std::size_t i = 0; i < frequencies_hz.size(); ++i) {
    if (!std::isfinite(frequencies_hz[i]) || frequencies_hz[i] < 0.0) {
      throw std::invalid_argument("squeezing_spectrum: frequencies must be >= 0");
    }
    if (i > 0 && !(frequencies_hz[i] > frequencies_hz[i - 1])) {
      throw std::invalid_argument(
          "squeezing_spectrum: frequencies must be strictly increasing");
    }
  }
  NoiseSpectrum spectrum;
  spectrum.frequencies_hz = frequencies_hz;
  spectrum.noise_db.reserve(frequencies_hz.size());
  for (double f : frequencies_hz) {
    const double decorrelated =
        state.var_probe + state.var_conjugate -
        2.0 * state.covar * std::cos(two_pi * f * delay_s);
    spectrum.noise_db.push_back(10.0 * std::log10(decorrelated / total));
  }
  return spectrum;
}

double delay_from_media(const MediumModel& medium, double omega_probe,
                        double omega_conjugate) {
  const double ng_probe = group_index(medium, omega_probe);
  const double ng_conjugate = group_index(medium, omega_conjugate);
  return medium.length / speed_of_light * (ng_probe - ng_conjugate);
}

}  // namespace fwm
