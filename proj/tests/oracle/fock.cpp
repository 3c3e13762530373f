#include "fock.hpp"

#include <cmath>
#include <stdexcept>

namespace testref {

FockTwinBeam::FockTwinBeam(std::size_t truncation, double seed_mean)
    : dim_(truncation + 1), psi_(dim_ * dim_, 0.0) {
  if (truncation < 1 || seed_mean < 0.0) {
    throw std::invalid_argument("FockTwinBeam: bad truncation or seed");
  }
  const double alpha = std::sqrt(seed_mean);
  double amp = std::exp(-seed_mean / 2.0);
  for (std::size_t na = 0; na < dim_; ++na) {
    psi_[na * dim_] = amp;
    amp *= alpha / std::sqrt(static_cast<double>(na + 1));
  }
}

void FockTwinBeam::apply_generator(const std::vector<double>& in,
                                   std::vector<double>& out) const {
  for (std::size_t na = 0; na < dim_; ++na) {
    for (std::size_t nb = 0; nb < dim_; ++nb) {
      double value = 0.0;
      if (na > 0 && nb > 0) {
        value += std::sqrt(static_cast<double>(na) * static_cast<double>(nb)) *
                 in[(na - 1) * dim_ + (nb - 1)];
      }
      if (na + 1 < dim_ && nb + 1 < dim_) {
        value -= std::sqrt(static_cast<double>(na + 1) * static_cast<double>(nb + 1)) *
                 in[(na + 1) * dim_ + (nb + 1)];
      }
      out[na * dim_ + nb] = value;
    }
  }
}

void FockTwinBeam::evolve_to_gain(double gain, int steps) {
  if (gain < 1.0 || steps < 1) {
    throw std::invalid_argument("FockTwinBeam: gain must be >= 1");
  }
  const double r = std::log(std::sqrt(gain) + std::sqrt(gain - 1.0));
  if (r == 0.0) {
    return;
  }
  const double h = r / static_cast<double>(steps);
  std::vector<double> k1(psi_.size()), k2(psi_.size()), k3(psi_.size()),
      k4(psi_.size()), tmp(psi_.size());
  for (int step = 0; step < steps; ++step) {
    apply_generator(psi_, k1);
    for (std::size_t i = 0; i < psi_.size(); ++i) {
      tmp[i] = psi_[i] + 0.5 * h * k1[i];
    }
    apply_generator(tmp, k2);
    for (std::size_t i = 0; i < psi_.size(); ++i) {
      tmp[i] = psi_[i] + 0.5 * h * k2[i];
    }
    apply_generator(tmp, k3);
    for (std::size_t i = 0; i < psi_.size(); ++i) {
      tmp[i] = psi_[i] + h * k3[i];
    }
    apply_generator(tmp, k4);
    for (std::size_t i = 0; i < psi_.size(); ++i) {
      psi_[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
  }
}

FockTwinBeam::Moments FockTwinBeam::moments() const {
  double ea = 0.0, eb = 0.0, eaa = 0.0, ebb = 0.0, eab = 0.0;
  for (std::size_t na = 0; na < dim_; ++na) {
    for (std::size_t nb = 0; nb < dim_; ++nb) {
      const double p = psi_[na * dim_ + nb] * psi_[na * dim_ + nb];
      const double a = static_cast<double>(na);
      const double b = static_cast<double>(nb);
      ea += p * a;
      eb += p * b;
      eaa += p * a * a;
      ebb += p * b * b;
      eab += p * a * b;
    }
  }
  Moments m;
  m.mean_a = ea;
  m.mean_b = eb;
  m.var_a = eaa - ea * ea;
  m.var_b = ebb - eb * eb;
  m.covar = eab - ea * eb;
  m.var_diff = m.var_a + m.var_b - 2.0 * m.covar;
  return m;
}

FockTwinBeam::Moments FockTwinBeam::thin(const Moments& m, double eta_a,
                                         double eta_b) {
  const double eaa = m.var_a + m.mean_a * m.mean_a;   // E[Na^2]
  const double ebb = m.var_b + m.mean_b * m.mean_b;
  const double eab = m.covar + m.mean_a * m.mean_b;   // E[Na Nb]
  Moments t;
  t.mean_a = eta_a * m.mean_a;
  t.mean_b = eta_b * m.mean_b;
  const double eaa_t = eta_a * eta_a * (eaa - m.mean_a) + eta_a * m.mean_a;
  const double ebb_t = eta_b * eta_b * (ebb - m.mean_b) + eta_b * m.mean_b;
  const double eab_t = eta_a * eta_b * eab;
  t.var_a = eaa_t - t.mean_a * t.mean_a;
  t.var_b = ebb_t - t.mean_b * t.mean_b;
  t.covar = eab_t - t.mean_a * t.mean_b;
  t.var_diff = t.var_a + t.var_b - 2.0 * t.covar;
  return t;
}

double FockTwinBeam::norm() const {
  double total = 0.0;
  for (double v : psi_) {
    total += v * v;
  }
  return total;
}

}  // namespace testref
