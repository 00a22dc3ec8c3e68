#ifndef NETTEST_LAGRANGE_HPP
#define NETTEST_LAGRANGE_HPP

#include <string>
#include <vector>

#include "nettest/errors.hpp"

namespace nettest {

enum class FeasibilityStatus { Feasible, AllZero, AllNonNegative, AllNonPositive };

const char* to_string(FeasibilityStatus status);

// Centered motif counts h_i = T(H, G_i) - h0 plus the centering and scale
// metadata. scale is 1 for the fixed-size and sparse regimes and
// m^{v(H)-2} for the dense regime.
struct CenteredCounts {
  std::vector<double> values;
  double h0 = 0.0;
  double scale = 1.0;
};

// values = raw - h0, with finiteness and scale validation.
CenteredCounts center_counts(const std::vector<double>& raw, double h0,
                             double scale = 1.0);

struct NoRootError : Error {
  NoRootError(const std::string& msg, FeasibilityStatus s)
      : Error(msg), status(s) {}
  FeasibilityStatus status;
};

struct LagrangeSolution {
  double lambda_hat = 0.0;
  FeasibilityStatus status = FeasibilityStatus::Feasible;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  double residual = 0.0;
  int iterations = 0;
};

// Classifies the support of the centered counts relative to zero; a root of
// the tilted-count equation exists exactly when the support straddles zero
// (or is identically zero).
FeasibilityStatus feasibility(const CenteredCounts& h);

// Unique root of sum_i h_i exp(-lambda h_i) = 0, located by bracket doubling
// from [-1, 1] and bisection to relative width 1e-12 plus one Newton polish.
// The objective is evaluated in split log-sum-exp form so counts of any
// magnitude stay finite. AllZero inputs return lambda = 0 flagged AllZero;
// one-sided inputs throw NoRootError.
LagrangeSolution solve_root(const CenteredCounts& h);

// Dense-regime form: the root of the scaled critical-point equation equals
// scale times the unscaled root, exactly.
LagrangeSolution solve_root_scaled(const CenteredCounts& h);

// MaxEnt weights w_i proportional to exp(-lambda h_i), normalized to sum 1.
std::vector<double> weights(const CenteredCounts& h, double lambda_hat);

// Weighted form of the root equation, sum_i w_i a_i exp(-lambda a_i) = 0 with
// w_i = exp(log_weight_i); backs population-level equations over enumerated
// graph distributions.
struct WeightedPoint {
  double value = 0.0;
  double log_weight = 0.0;
};

FeasibilityStatus feasibility_weighted(const std::vector<WeightedPoint>& pts);
LagrangeSolution solve_root_weighted(const std::vector<WeightedPoint>& pts);

}  // namespace nettest

#endif
