#include "nettest/poisson.hpp"

#include <cmath>

#include "nettest/errors.hpp"

namespace nettest {

PoissonTilt make_tilt(double mu, double h0) {
  if (!(mu > 0.0) || !std::isfinite(mu))
    throw DomainError("Poisson mean must be a positive finite real");
  if (!(h0 > 0.0) || !std::isfinite(h0))
    throw DomainError("centering must be a positive finite real");
  return PoissonTilt{mu, h0};
}

double tilted_mgf(double mu, double lambda) {
  if (!std::isfinite(lambda)) throw DomainError("lambda must be finite");
  return std::exp(mu * (std::exp(-lambda) - 1.0));
}

TiltedMoments tilted_moments(double mu, double lambda) {
  const double m = tilted_mgf(mu, lambda);
  const double q = mu * std::exp(-lambda);
  return TiltedMoments{q * m, (q + q * q) * m};
}

double centered_tilt_mean(const PoissonTilt& tilt, double lambda) {
  const double m = tilted_mgf(tilt.mu, lambda);
  const double q = tilt.mu * std::exp(-lambda);
  return std::exp(lambda * tilt.h0) * m * (q - tilt.h0);
}

double centered_tilt_moment2(const PoissonTilt& tilt, double lambda) {
  const double m = tilted_mgf(tilt.mu, lambda);
  const double q = tilt.mu * std::exp(-lambda);
  return std::exp(lambda * tilt.h0) * m *
         (q + q * q - 2.0 * tilt.h0 * q + tilt.h0 * tilt.h0);
}

double centered_tilt_variance(const PoissonTilt& tilt, double lambda) {
  // E[Y^2] is the second centered moment under the doubled tilt.
  const double m2 = tilted_mgf(tilt.mu, 2.0 * lambda);
  const double q2 = tilt.mu * std::exp(-2.0 * lambda);
  const double second =
      std::exp(2.0 * lambda * tilt.h0) * m2 *
      (q2 + q2 * q2 - 2.0 * tilt.h0 * q2 + tilt.h0 * tilt.h0);
  const double mean = centered_tilt_mean(tilt, lambda);
  return second - mean * mean;
}

double lambda_star(const PoissonTilt& tilt) {
  return std::log(tilt.mu / tilt.h0);
}

double asymptotic_variance(const PoissonTilt& tilt, double lambda_star) {
  if (!std::isfinite(lambda_star)) throw DomainError("lambda must be finite");
  const double f = centered_tilt_moment2(tilt, lambda_star);
  const double g = centered_tilt_variance(tilt, lambda_star);
  return g / (f * f);
}

}  // namespace nettest
