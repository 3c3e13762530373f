#include "fwm/scan.hpp"

#include <Eigen/Dense>
#include <unsupported/Eigen/FFT>

#include <algorithm>
#include <cmath>
#include <random>

#include "fwm/constants.hpp"
#include "fwm/io.hpp"

namespace fwm {

namespace {

std::size_t next_power_of_two(std::size_t n) {
  std::size_t p = 1;
  while (p < n) {
    p <<= 1;
  }
  return p;
}

double uniform_spacing(const std::vector<double>& grid, const char* what) {
  const double spacing = (grid.back() - grid.front()) /
                         static_cast<double>(grid.size() - 1);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double step = grid[i] - grid[i - 1];
    if (!(step > 0.0)) {
      throw std::invalid_argument(std::string(what) +
                                  ": grid must be strictly increasing");
    }
    if (std::abs(step - spacing) > 1e-3 * spacing) {
      throw std::invalid_argument(std::string(what) +
                                  ": grid must be uniform within 0.1%");
    }
  }
  return spacing;
}

// Deterministic standard normal: Box-Muller on explicit 53-bit uniforms, so
// scans reproduce across standard libraries, not only across runs.
class NormalSampler {
 public:
  explicit NormalSampler(std::uint64_t seed) : rng_(seed) {}

  double operator()() {
    double u1 = 0.0;
    do {
      u1 = static_cast<double>(rng_() >> 11) * 0x1p-53;
    } while (u1 <= 0.0);
    const double u2 = static_cast<double>(rng_() >> 11) * 0x1p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
  }

 private:
  std::mt19937_64 rng_;
};

// Lorentzian basis for the separable fit: ln T = sum_l a_l * phi_l with
// phi_l(x) = w^2 / ((x - c)^2 + w^2) in angular detuning x, a_l = alpha0_l * L.
double lorentz_phi(double x, double c, double w) {
  const double u = x - c;
  return w * w / (u * u + w * w);
}

struct LinearFit {
  Eigen::VectorXd strengths;
  Eigen::VectorXd residual;
  double cost = 0.0;
};

LinearFit solve_strengths(const std::vector<double>& x, const Eigen::VectorXd& y,
                          const Eigen::VectorXd& centers, const Eigen::VectorXd& widths) {
  const auto m = static_cast<Eigen::Index>(x.size());
  const Eigen::Index k = centers.size();
  Eigen::MatrixXd phi(m, k);
  for (Eigen::Index l = 0; l < k; ++l) {
    for (Eigen::Index row = 0; row < m; ++row) {
      phi(row, l) = lorentz_phi(x[static_cast<std::size_t>(row)], centers[l], widths[l]);
    }
  }
  LinearFit fit;
  fit.strengths = phi.colPivHouseholderQr().solve(y);
  fit.residual = phi * fit.strengths - y;
  fit.cost = fit.residual.squaredNorm();
  return fit;
}

}  // namespace

void validate(const ScanData& scan) {
  if (scan.detunings_hz.size() != scan.transmission.size()) {
    throw std::invalid_argument("ScanData arrays must have equal length");
  }
  if (scan.detunings_hz.size() < 64) {
    throw std::invalid_argument("ScanData needs at least 64 points");
  }
  uniform_spacing(scan.detunings_hz, "ScanData");
  for (double t : scan.transmission) {
    if (!std::isfinite(t) || t <= 0.0) {
      throw std::invalid_argument("ScanData transmission must be finite and > 0");
    }
  }
}

FitResult fit_lines(const ScanData& scan, int n_lines,
                    const std::vector<double>& seed_centers_hz,
                    double length_m, double reference_hz) {
  validate(scan);
  if (n_lines < 1) {
    throw std::invalid_argument("fit_lines: n_lines must be >= 1");
  }
  if (seed_centers_hz.size() != static_cast<std::size_t>(n_lines)) {
    throw std::invalid_argument("fit_lines: one seed center per line required");
  }
  if (!(length_m > 0.0)) {
    throw std::invalid_argument("fit_lines: length_m must be > 0");
  }
  if (!(reference_hz > 0.0)) {
    throw std::invalid_argument("fit_lines: reference_hz must be > 0");
  }
  for (double seed : seed_centers_hz) {
    if (seed < scan.detunings_hz.front() || seed > scan.detunings_hz.back()) {
      throw std::invalid_argument("fit_lines: seed center outside the scanned range");
    }
  }

  const std::size_t m = scan.detunings_hz.size();
  const double spacing = two_pi * (scan.detunings_hz[1] - scan.detunings_hz[0]);
  std::vector<double> x(m);
  Eigen::VectorXd y(static_cast<Eigen::Index>(m));
  for (std::size_t i = 0; i < m; ++i) {
    x[i] = two_pi * scan.detunings_hz[i];
    y[static_cast<Eigen::Index>(i)] = std::log(scan.transmission[i]);
  }

  const Eigen::Index k = n_lines;
  Eigen::VectorXd centers(k);
  Eigen::VectorXd widths(k);
  for (Eigen::Index l = 0; l < k; ++l) {
    centers[l] = two_pi * seed_centers_hz[static_cast<std::size_t>(l)];
    widths[l] = 5.0 * spacing;
  }

  LinearFit current = solve_strengths(x, y, centers, widths);
  FitResult result;
  result.cost_trace.push_back(current.cost);

  auto finalize = [&](FitResult& r) {
    std::vector<Eigen::Index> order(static_cast<std::size_t>(k));
    for (Eigen::Index l = 0; l < k; ++l) {
      order[static_cast<std::size_t>(l)] = l;
    }
    std::sort(order.begin(), order.end(),
              [&](Eigen::Index a, Eigen::Index b) { return centers[a] < centers[b]; });
    r.lines.clear();
    for (Eigen::Index l : order) {
      SpectralLine line;
      line.alpha0 = current.strengths[l] / length_m;
      line.omega0 = two_pi * reference_hz + centers[l];
      line.gamma = widths[l];
      r.lines.push_back(line);
    }
    r.residual_rms = std::sqrt(current.cost / static_cast<double>(m));
  };

  double lambda = 1e-3;
  int accepted = 0;
  const int max_trials = 500;
  bool converged = false;
  for (int trial = 0; trial < max_trials && !converged; ++trial) {
    // Gauss-Newton Jacobian over centers and widths, strengths held at their
    // current linear solution.
    Eigen::MatrixXd jac(static_cast<Eigen::Index>(m), 2 * k);
    for (Eigen::Index l = 0; l < k; ++l) {
      const double c = centers[l];
      const double w = widths[l];
      const double a = current.strengths[l];
      for (Eigen::Index row = 0; row < static_cast<Eigen::Index>(m); ++row) {
        const double u = x[static_cast<std::size_t>(row)] - c;
        const double denom = u * u + w * w;
        const double denom2 = denom * denom;
        jac(row, 2 * l) = a * 2.0 * w * w * u / denom2;
        jac(row, 2 * l + 1) = a * 2.0 * w * u * u / denom2;
      }
    }
    const Eigen::MatrixXd jtj = jac.transpose() * jac;
    const Eigen::VectorXd jtr = jac.transpose() * current.residual;
    Eigen::MatrixXd damped = jtj;
    for (Eigen::Index d = 0; d < 2 * k; ++d) {
      damped(d, d) += lambda * std::max(jtj(d, d), 1e-30);
    }
    const Eigen::VectorXd step = damped.ldlt().solve(-jtr);

    Eigen::VectorXd trial_centers = centers;
    Eigen::VectorXd trial_widths = widths;
    bool feasible = true;
    for (Eigen::Index l = 0; l < k; ++l) {
      trial_centers[l] += step[2 * l];
      trial_widths[l] += step[2 * l + 1];
      if (!(trial_widths[l] > 0.0)) {
        feasible = false;
      }
    }

    bool improved = false;
    LinearFit trial_fit;
    if (feasible) {
      trial_fit = solve_strengths(x, y, trial_centers, trial_widths);
      improved = trial_fit.cost < current.cost;
    }

    if (improved) {
      const double previous = current.cost;
      centers = trial_centers;
      widths = trial_widths;
      current = trial_fit;
      ++accepted;
      result.cost_trace.push_back(current.cost);
      lambda = std::max(lambda / 3.0, 1e-12);
      for (Eigen::Index l = 0; l < k; ++l) {
        if (widths[l] < spacing) {
          throw std::runtime_error(
              "fit_lines: width collapsed below the grid spacing");
        }
      }
      const double change = (previous - current.cost) / std::max(previous, 1e-300);
      if (change < 1e-10 || current.cost < 1e-30 * static_cast<double>(m)) {
        converged = true;
      }
    } else {
      lambda *= 10.0;
      if (lambda > 1e12) {
        // No descent direction improves the cost at double precision.
        converged = true;
      }
    }
  }

  result.iterations = accepted;
  finalize(result);
  if (!converged) {
    throw fit_error("fit_lines: no convergence within the iteration budget", result);
  }
  return result;
}

std::vector<double> kramers_kronig(const std::vector<double>& im_n,
                                   double edge_threshold) {
  const std::size_t m = im_n.size();
  if (m < 16) {
    throw std::invalid_argument("kramers_kronig: need at least 16 samples");
  }
  if (!(edge_threshold > 0.0)) {
    throw std::invalid_argument("kramers_kronig: edge_threshold must be > 0");
  }
  double peak = 0.0;
  for (double v : im_n) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("kramers_kronig: samples must be finite");
    }
    peak = std::max(peak, std::abs(v));
  }
  if (peak == 0.0) {
    return std::vector<double>(m, 0.0);
  }
  if (std::max(std::abs(im_n.front()), std::abs(im_n.back())) > edge_threshold * peak) {
    throw std::runtime_error(
        "kramers_kronig: Im n has not decayed at the grid edges; widen the grid");
  }

  const std::size_t padded = next_power_of_two(4 * m);
  const std::size_t offset = (padded - m) / 2;
  std::vector<std::complex<double>> buffer(padded, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    buffer[offset + i] = im_n[i];
  }
  Eigen::FFT<double> fft;
  std::vector<std::complex<double>> spectrum(padded);
  fft.fwd(spectrum, buffer);
  // Analytic-signal multiplier: z = g + i H[g].
  for (std::size_t j = 1; j < padded / 2; ++j) {
    spectrum[j] *= 2.0;
  }
  for (std::size_t j = padded / 2 + 1; j < padded; ++j) {
    spectrum[j] = 0.0;
  }
  fft.inv(buffer, spectrum);

  std::vector<double> re_n(m);
  for (std::size_t i = 0; i < m; ++i) {
    re_n[i] = -buffer[offset + i].imag();
  }
  return re_n;
}

GroupIndexProfile group_index_profile(const std::vector<double>& detunings_hz,
                                      const std::vector<double>& re_n,
                                      double reference_hz, double n0) {
  if (detunings_hz.size() != re_n.size()) {
    throw std::invalid_argument("group_index_profile: arrays must have equal length");
  }
  if (detunings_hz.size() < 5) {
    throw std::invalid_argument("group_index_profile: need at least 5 samples");
  }
  const double h = two_pi * uniform_spacing(detunings_hz, "group_index_profile");
  const std::size_t m = re_n.size();

  auto derivative = [&](std::size_t i) {
    const auto f = [&](std::size_t j) { return re_n[j]; };
    if (i >= 2 && i + 2 < m) {
      return (f(i - 2) - 8.0 * f(i - 1) + 8.0 * f(i + 1) - f(i + 2)) / (12.0 * h);
    }
    if (i == 0) {
      return (-25.0 * f(0) + 48.0 * f(1) - 36.0 * f(2) + 16.0 * f(3) - 3.0 * f(4)) /
             (12.0 * h);
    }
    if (i == 1) {
      return (-3.0 * f(0) - 10.0 * f(1) + 18.0 * f(2) - 6.0 * f(3) + f(4)) / (12.0 * h);
    }
    if (i == m - 2) {
      return (-f(m - 5) + 6.0 * f(m - 4) - 18.0 * f(m - 3) + 10.0 * f(m - 2) +
              3.0 * f(m - 1)) /
             (12.0 * h);
    }
    return (3.0 * f(m - 5) - 16.0 * f(m - 4) + 36.0 * f(m - 3) - 48.0 * f(m - 2) +
            25.0 * f(m - 1)) /
           (12.0 * h);
  };

  GroupIndexProfile profile;
  profile.detunings_hz = detunings_hz;
  profile.group_index.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double omega = two_pi * (reference_hz + detunings_hz[i]);
    if (!(omega > 0.0)) {
      throw std::domain_error("group_index_profile: grid crosses omega = 0");
    }
    profile.group_index[i] = n0 + omega * derivative(i);
  }
  return profile;
}

ScanData emit_scan(const MediumModel& medium, double reference_hz,
                   const FrequencyGrid& grid, double noise_fraction,
                   std::uint64_t seed) {
  validate(medium);
  validate(grid);
  if (grid.log_scale) {
    throw std::invalid_argument("emit_scan: detuning grids must be linear");
  }
  if (grid.points < 64) {
    throw std::invalid_argument("emit_scan: need at least 64 grid points");
  }
  if (!std::isfinite(noise_fraction) || noise_fraction < 0.0 || noise_fraction >= 0.5) {
    throw std::invalid_argument("emit_scan: noise_fraction must be in [0, 0.5)");
  }

  ScanData scan;
  scan.detunings_hz = make_grid(grid);
  scan.transmission.reserve(scan.detunings_hz.size());
  NormalSampler normal(seed);
  for (double detuning : scan.detunings_hz) {
    const double omega = two_pi * (reference_hz + detuning);
    if (!(omega > 0.0)) {
      throw std::domain_error("emit_scan: grid crosses omega = 0");
    }
    double value = intensity_transmission(medium, omega);
    if (noise_fraction > 0.0) {
      value *= 1.0 + noise_fraction * normal();
    }
    if (!(value > 0.0)) {
      throw std::runtime_error(
          "emit_scan: noise drove a transmission sample non-positive");
    }
    scan.transmission.push_back(value);
  }
  validate(scan);
  return scan;
}

}  // namespace fwm
