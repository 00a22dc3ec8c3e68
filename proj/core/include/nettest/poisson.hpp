#ifndef NETTEST_POISSON_HPP
#define NETTEST_POISSON_HPP

namespace nettest {

// Tilted Poisson reference: Z ~ Poisson(mu) centered at h0 > 0.
struct PoissonTilt {
  double mu = 1.0;
  double h0 = 1.0;
};

PoissonTilt make_tilt(double mu, double h0);

// E[exp(-lambda Z)] = exp(mu (e^{-lambda} - 1)).
double tilted_mgf(double mu, double lambda);

// E[Z exp(-lambda Z)] and E[Z^2 exp(-lambda Z)].
struct TiltedMoments {
  double first = 0.0;
  double second = 0.0;
};
TiltedMoments tilted_moments(double mu, double lambda);

// E[(Z - h0) exp(-lambda (Z - h0))]; its unique root is log(mu / h0).
double centered_tilt_mean(const PoissonTilt& tilt, double lambda);

// f(lambda) = E[(Z - h0)^2 exp(-lambda (Z - h0))].
double centered_tilt_moment2(const PoissonTilt& tilt, double lambda);

// g(lambda) = Var[(Z - h0) exp(-lambda (Z - h0))].
double centered_tilt_variance(const PoissonTilt& tilt, double lambda);

// Population multiplier log(mu / h0).
double lambda_star(const PoissonTilt& tilt);

// Sparse-regime asymptotic variance g(lambda) / f(lambda)^2.
double asymptotic_variance(const PoissonTilt& tilt, double lambda_star);

}  // namespace nettest

#endif
