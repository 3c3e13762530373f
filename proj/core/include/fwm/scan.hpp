#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "fwm/grid.hpp"
#include "fwm/medium.hpp"

namespace fwm {

// Measured (or synthesized) transmission vs probe detuning. Detunings are in
// Hz relative to a reference optical frequency stated by the producer (the
// CSV format carries detunings only). Invariants: >= 64 points, strictly
// increasing, uniform spacing within 0.1 %, transmission > 0 (pre-normalized:
// unity away from all lines).
struct ScanData {
  std::vector<double> detunings_hz;
  std::vector<double> transmission;
};

struct FitResult {
  std::vector<SpectralLine> lines;   // sorted by center frequency
  double residual_rms = 0.0;         // RMS of ln(transmission) residuals
  int iterations = 0;                // accepted outer iterations
  std::vector<double> cost_trace;    // cost after each accepted iteration, non-increasing
};

// Group index sampled on a detuning grid (Hz, relative to the same reference
// used by the scan).
struct GroupIndexProfile {
  std::vector<double> detunings_hz;
  std::vector<double> group_index;
};

// Fit failure carrying the best parameters found so far.
class fit_error : public std::runtime_error {
 public:
  fit_error(const std::string& what, FitResult best)
      : std::runtime_error(what), best_(std::move(best)) {}
  const FitResult& best() const { return best_; }

 private:
  FitResult best_;
};

void validate(const ScanData& scan);

// Strict CSV reader for the scan format (header "detuning_hz,transmission").
// Errors name the offending line number.
ScanData load_scan(const std::string& path);

// Least-squares decomposition of ln(transmission) into Lorentzian lines,
//   ln T(d) = sum_l alpha0_l * length * gamma_l^2 / ((2 pi d - 2 pi c_l)^2 + gamma_l^2),
// solved separably: the strengths alpha0_l enter linearly and are eliminated
// by a linear solve inside each step of a damped Gauss-Newton iteration over
// the centers and widths. seed_centers_hz (one per line, inside the scan
// range) start the centers; widths start at 5 grid spacings. Convergence:
// relative cost change < 1e-10; iteration cap 500. length_m is the cell
// length used to report alpha0 in 1/m; reference_hz anchors the absolute line
// centers omega0 = 2 pi (reference_hz + center detuning).
// Throws fit_error (with best-so-far attached) on non-convergence, and
// std::runtime_error if any width collapses below the grid spacing.
FitResult fit_lines(const ScanData& scan, int n_lines,
                    const std::vector<double>& seed_centers_hz,
                    double length_m, double reference_hz);

// Dispersive part from the absorptive part on a uniform grid: discrete
// Hilbert transform computed with zero padding (factor >= 4, rounded to a
// power of two). Input Im n samples; output Re n - n0 samples on the same
// grid. The input must have decayed at the grid edges: if max(|im| at the
// two edge samples) > edge_threshold * max|im|, throws std::runtime_error
// (truncated tails corrupt the transform; no implicit apodization).
std::vector<double> kramers_kronig(const std::vector<double>& im_n,
                                   double edge_threshold = 3e-3);

// Group index n0 + omega dn/domega from sampled Re n (or Re n - n0; the
// constant does not matter) on a uniform detuning grid via 5-point central
// finite differences, one-sided at the edges. omega = 2 pi (reference_hz +
// detuning). Requires >= 5 samples. The exact group index adds the sampled
// offset itself (n_g = n + omega dn/domega); that term is ~gamma/omega times
// the derivative term, ~1e-8 relative here, far below the resolution of any
// sampled profile, and dropping it keeps the result independent of whether
// the caller includes the n0 baseline.
GroupIndexProfile group_index_profile(const std::vector<double>& detunings_hz,
                                      const std::vector<double>& re_n,
                                      double reference_hz, double n0 = 1.0);

// Synthesize a transmission scan of the medium over a detuning grid (Hz,
// relative to reference_hz, linear scale): intensity_transmission per point,
// multiplied by (1 + noise_fraction * g) with g standard normal from a
// deterministic generator seeded with seed. noise_fraction >= 0; grid must
// produce >= 64 points.
ScanData emit_scan(const MediumModel& medium, double reference_hz,
                   const FrequencyGrid& grid, double noise_fraction,
                   std::uint64_t seed);

}  // namespace fwm
