#pragma once

#include <vector>

#include "fwm/medium.hpp"

namespace fwm {

// Linearized phase-insensitive amplifier parameters. gain is the probe
// intensity gain G >= 1; seed_flux is the injected coherent probe flux N0 in
// photons/s, > 0.
struct AmplifierParams {
  double gain = 1.0;
  double seed_flux = 0.0;
};

// Intensity transmissions of the detection paths, in (0, 1].
struct ChannelLosses {
  double eta_probe = 1.0;
  double eta_conjugate = 1.0;
};

// Photon-flux means and fluctuation second moments of the twin beams, in shot
// units: a coherent beam of mean flux N has variance N. Invariant:
// covar^2 <= var_probe * var_conjugate (Cauchy-Schwarz).
struct TwinBeamState {
  double mean_probe = 0.0;
  double mean_conjugate = 0.0;
  double var_probe = 0.0;
  double var_conjugate = 0.0;
  double covar = 0.0;
};

// Intensity-difference noise vs detection frequency, dB relative to shot
// noise. Parallel arrays of equal length; frequencies strictly increasing.
struct NoiseSpectrum {
  std::vector<double> frequencies_hz;
  std::vector<double> noise_db;
};

void validate(const AmplifierParams& params);
void validate(const ChannelLosses& losses);
void validate(const TwinBeamState& state);
void validate(const NoiseSpectrum& spectrum);

// Ideal linearized amplifier output for a coherent seed of flux N0:
//   mean_probe = G N0            var_probe     = G (2G-1) N0
//   mean_conj  = (G-1) N0        var_conjugate = (G-1) (2G-1) N0
//   covar      = 2 G (G-1) N0
// Throws std::domain_error for gain < 1, std::invalid_argument for
// seed_flux <= 0.
TwinBeamState amplify(const AmplifierParams& params);

// Independent beam-splitter losses on each arm:
//   mean' = eta mean,  var' = eta^2 (var - mean) + eta mean,
//   covar' = eta_p eta_c covar.
// Composing two losses equals applying their product.
TwinBeamState apply_losses(const TwinBeamState& state, const ChannelLosses& losses);

// 10 log10[(var_p + var_c - 2 covar) / (mean_p + mean_c)]. Negative values
// are squeezing below the shot-noise level. Throws std::domain_error when the
// total mean flux is zero.
double difference_noise_db(const TwinBeamState& state);

// Difference noise vs detection frequency for a differential propagation
// delay tau between the arms, which multiplies the cross covariance by
// cos(2 pi f tau):
//   noise(f) = [var_p + var_c - 2 covar cos(2 pi f tau)] / (mean_p + mean_c)
// in dB. frequencies_hz must be strictly increasing and >= 0; delay_s may be
// negative (advancement), the spectrum is even in tau.
NoiseSpectrum squeezing_spectrum(const TwinBeamState& state,
                                 const std::vector<double>& frequencies_hz,
                                 double delay_s);

// Differential group delay (L/c) * [group_index(probe) - group_index(conj)]
// accumulated over the cell.
double delay_from_media(const MediumModel& medium, double omega_probe,
                        double omega_conjugate);

}  // namespace fwm
