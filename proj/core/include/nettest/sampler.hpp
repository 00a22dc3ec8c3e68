#ifndef NETTEST_SAMPLER_HPP
#define NETTEST_SAMPLER_HPP

#include <cstdint>
#include <vector>

#include "nettest/graph.hpp"
#include "nettest/motif.hpp"
#include "nettest/rng.hpp"

namespace nettest {

struct ErModel {
  int m = 0;
  double p = 0.0;
};

ErModel make_er(int m, double p);

struct ErgmTerm {
  Motif motif;
  double beta = 0.0;
};

// Exponential random graph model with density proportional to
// exp(m^2 sum_k beta_k t(T_k, G)). The first term must be the single edge;
// the model is ferromagnetic when beta_k > 0 for every k >= 2.
struct ErgmModel {
  int m = 0;
  std::vector<ErgmTerm> terms;
  bool ferromagnetic = false;
};

ErgmModel make_ergm(int m, std::vector<ErgmTerm> terms);

struct SamplerConfig {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  int burn_in = 50;  // sweeps before the first retained sample
  int thin = 5;      // sweeps between retained samples
  bool force_non_subcritical = false;
};

// Fixed-point analysis of the self-consistency map phi(u) derived from the
// model coefficients. Subcritical means exactly one fixed point in (0, 1)
// with derivative below 1; in that regime the model behaves like G(m, p*).
struct SubcriticalReport {
  std::vector<double> fixed_points;  // sorted ascending
  std::vector<double> derivatives;   // phi' at each fixed point
  bool is_subcritical = false;

  double p_star() const;  // the unique fixed point; requires is_subcritical
};

struct NotSubcriticalError : Error {
  NotSubcriticalError(const std::string& msg, SubcriticalReport r)
      : Error(msg), report(std::move(r)) {}
  SubcriticalReport report;
};

// Phi_beta(a) = sum_k beta_k e_k a^{e_k - 1}.
double ergm_field(const ErgmModel& model, double a);

// phi_beta(a) = logistic(2 Phi_beta(a)).
double fixed_point_map(const ErgmModel& model, double a);

// Finds all fixed points of phi on a 10^4-point grid with bisection
// refinement to 1e-12 and classifies the regime. Requires a ferromagnetic
// model.
SubcriticalReport subcritical_check(const ErgmModel& model);

// One G(m, p) draw; each edge slot consumes one uniform in lexicographic
// order, so samples are reproducible given (seed, stream).
Graph sample_er(const ErModel& model, RngStream& rng);

// Hamiltonian m^2 sum_k beta_k t(T_k, G), evaluated exactly.
double ergm_hamiltonian(const Graph& g, const ErgmModel& model);

// Hamiltonian difference of toggling pair (i, j) on: H(edge on) - H(edge off)
// with all other edges as in g. Edge, triangle, and path2 terms use local
// counts; other terms recount homomorphisms.
double hamiltonian_delta(const Graph& g, const ErgmModel& model, int i, int j);

// n ERGM draws from single-site Glauber dynamics started at ER(p*), where
// each edge update samples the full conditional exp(dH)/(1 + exp(dH)).
// Refuses non-subcritical models unless the config forces them.
std::vector<Graph> sample_ergm(const ErgmModel& model,
                               const SamplerConfig& config, int n);

}  // namespace nettest

#endif
