#ifndef NETTEST_VARIATIONAL_HPP
#define NETTEST_VARIATIONAL_HPP

#include "nettest/motif.hpp"
#include "nettest/sampler.hpp"

namespace nettest {

// Dense-regime variational problem restricted to constant graphons: the
// tilted free energy over u in [0, 1] for a subcritical ferromagnetic model,
// a motif H, and a reference edge parameter p0.
struct VariationalModel {
  ErgmModel ergm;
  Motif H;
  double p0 = 0.5;
};

// Validates p0 in (0, 1) and the subcritical requirement.
VariationalModel make_variational_model(ErgmModel ergm, Motif H, double p0);

// u log u + (1 - u) log(1 - u), extended by continuity at the boundary.
double entropy_I(double u);

// -lambda u^{e(H)} / |Aut(H)| + sum_k beta_k u^{e_k} - I(u) / 2.
double objective(double lambda, double u, const VariationalModel& model);

struct VariationalResult {
  double u_star = 0.0;
  double value = 0.0;
  bool multiplicity_flag = false;  // a second local max within 1e-6 in value
};

// Global maximizer over [0, 1]: 10001-point grid scan plus Newton refinement
// of the first-order condition, clamped to [1e-12, 1 - 1e-12].
VariationalResult maximize_u(double lambda, const VariationalModel& model);

// Limit free energy difference
//   g(lambda) = lambda p0^{e(H)} / |Aut(H)| + sup_u(tilted) - sup_u(untilted),
// convex with g(0) = 0.
double g_of_lambda(double lambda, const VariationalModel& model);

// Unique critical point of g, located by bisection on the Danskin derivative
// g'(lambda) = p0^{e(H)}/|Aut(H)| - u*(lambda)^{e(H)}/|Aut(H)| to 1e-9.
double lambda_circ(const VariationalModel& model);

struct SharpRate {
  bool degenerate = false;
  double value = 0.0;
};

// Claimed limit of m^2 (lambda_hat - lambda_circ) under the alternative:
// |Aut(H)| / (u*^{e(H)} - p0^{e(H)}), with a degeneracy guard when the
// denominator vanishes. Requires lambda_circ < 0.
SharpRate sharp_rate_constant(const VariationalModel& model, double lambda_circ);

// The same formula on explicit inputs.
SharpRate sharp_rate_from(double u_star, double p0, const Motif& H);

}  // namespace nettest

#endif
