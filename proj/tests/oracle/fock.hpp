#pragma once

#include <cstddef>
#include <vector>

namespace testref {

// Brute-force two-mode oracle on a truncated Fock basis. The state psi(na, nb)
// evolves under d psi / d r = (a'b' - a b) psi, the phase-insensitive
// amplifier generator, with intensity gain G = cosh^2 r. The generator stays
// anti-Hermitian after truncation, so the evolution is unitary and the
// photon-number difference distribution is conserved exactly; truncation only
// distorts sum-photon observables. A real coherent seed keeps the amplitudes
// real for all r.
class FockTwinBeam {
 public:
  // Coherent seed of mean photon number seed_mean in mode a, vacuum in b.
  FockTwinBeam(std::size_t truncation, double seed_mean);

  // Evolve from r = 0 to the r matching the given intensity gain, fixed-step
  // classic Runge-Kutta.
  void evolve_to_gain(double gain, int steps = 4000);

  struct Moments {
    double mean_a = 0.0;
    double mean_b = 0.0;
    double var_a = 0.0;
    double var_b = 0.0;
    double covar = 0.0;
    double var_diff = 0.0;  // Var(Na - Nb)
  };

  Moments moments() const;

  // Exact independent binomial thinning of each mode (beam-splitter loss eta):
  //   E[N'] = eta E[N],  E[N'^2] = eta^2 (E[N^2] - E[N]) + eta E[N],
  //   E[N'a N'b] = eta_a eta_b E[Na Nb].
  static Moments thin(const Moments& m, double eta_a, double eta_b);

  double norm() const;

 private:
  std::size_t dim_;                // truncation + 1 levels per mode
  std::vector<double> psi_;        // row-major psi[na * dim_ + nb]
  void apply_generator(const std::vector<double>& in, std::vector<double>& out) const;
};

}  // namespace testref
