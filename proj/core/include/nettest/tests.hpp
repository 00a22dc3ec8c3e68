#ifndef NETTEST_TESTS_HPP
#define NETTEST_TESTS_HPP

#include <functional>
#include <optional>
#include <vector>

#include "nettest/graph.hpp"
#include "nettest/lagrange.hpp"
#include "nettest/motif.hpp"
#include "nettest/report.hpp"
#include "nettest/sampler.hpp"

namespace nettest {

struct TwoSampleInfeasibleError : Error {
  TwoSampleInfeasibleError(const std::string& msg, int sample_index,
                           FeasibilityStatus s)
      : Error(msg), sample(sample_index), status(s) {}
  int sample;  // 1 or 2
  FeasibilityStatus status;
};

// Sparse-regime configuration: reference constant c0 > 0 with centering
// h0 = c0^{v(H)} / |Aut(H)|; the motif must be strictly balanced.
struct SparseSpec {
  double c0 = 1.0;
  Motif H;
  double alpha = 0.05;
};

// Dense-regime configuration. The null model is either an Erdos-Renyi edge
// parameter or a subcritical ferromagnetic ERGM coefficient vector. c_n = 0
// selects the default rule m^2 / log(m^2); epsilon and c configure the
// two-sample variant.
struct DenseSpec {
  std::optional<double> p0;
  std::optional<ErgmModel> beta0;
  Motif H;
  double c_n = 0.0;
  double epsilon = 0.0;
  double c = 1.0;
};

// Goodness-of-fit for a fixed vertex count: the multiplier from counts
// centered at h0, standardized by the reciprocal-variance estimate, against
// the normal quantile.
TestReport gof_fixed(const std::vector<Graph>& samples, const Motif& H,
                     double h0, double alpha);

// Population multiplier for a distribution over graphs on m <= 5 vertices,
// by full enumeration of all 2^{m(m-1)/2} graphs. The pmf may be
// unnormalized; it is normalized internally.
double exact_lambda_fixed(int m, const std::function<double(const Graph&)>& pmf,
                          const Motif& H, double h0);

// Convenience pmf for G(m, p).
std::function<double(const Graph&)> er_pmf(int m, double p);

// Sparse-regime goodness-of-fit: reject when lambda_hat exceeds
// z_alpha / sqrt(mu0 n).
TestReport gof_sparse(const std::vector<Graph>& samples, const SparseSpec& spec);

// Sparse-regime two-sample test on |lambda_1 - lambda_2| with the tilted
// Poisson plug-in variance.
TestReport two_sample_sparse(const std::vector<Graph>& sample1,
                             const std::vector<Graph>& sample2,
                             const SparseSpec& spec);

// Dense-regime goodness-of-fit: the scaled multiplier against -1/c_n,
// one-sided left. No p-value (no distributional limit is available).
TestReport gof_dense(const std::vector<Graph>& samples, const DenseSpec& spec);

// Dense-regime two-sample test with the epsilon-margin centering
// C(m, v(H)) (1 - epsilon)^{e(H)} and threshold c / m^2.
TestReport two_sample_dense(const std::vector<Graph>& sample1,
                            const std::vector<Graph>& sample2,
                            const DenseSpec& spec);

// Unlabelled H-counts of a sample, validating a shared vertex count.
std::vector<double> motif_counts(const std::vector<Graph>& samples,
                                 const Motif& H);

}  // namespace nettest

#endif
