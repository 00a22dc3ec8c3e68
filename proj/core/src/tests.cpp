#include "nettest/tests.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "nettest/counting.hpp"
#include "nettest/normal.hpp"
#include "nettest/poisson.hpp"

namespace nettest {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Minimum sample size before one-sided infeasibility counts as overwhelming
// evidence rather than an error.
constexpr long kEvidenceFloor = 30;

void require_strictly_balanced(const Motif& H, const char* test_id) {
  if (!H.strictly_balanced)
    throw UnsupportedMotifError(std::string(test_id) +
                                " requires a strictly balanced motif; '" +
                                H.name + "' is not");
}

double sample_sd(const std::vector<double>& xs) {
  const double n = static_cast<double>(xs.size());
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= n;
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / (n - 1.0));
}

void record_solution(TestReport& report, const LagrangeSolution& sol) {
  report.lambda_hat = sol.lambda_hat;
  report.diagnostics.feasibility = to_string(sol.status);
  report.diagnostics.solver_iterations = sol.iterations;
  report.diagnostics.residual = sol.residual;
}

// Shared handling of non-straddling counts for the one-sided tests.
// evidence_high = the feasibility status that constitutes overwhelming
// evidence in the rejection direction.
enum class InfeasibleOutcome { Proceed, Decided };

InfeasibleOutcome handle_one_sided(TestReport& report, FeasibilityStatus status,
                                   long n, FeasibilityStatus evidence_high,
                                   const char* reject_note,
                                   const char* fail_note) {
  report.diagnostics.feasibility = to_string(status);
  if (status == FeasibilityStatus::Feasible) return InfeasibleOutcome::Proceed;
  const bool upper = evidence_high == FeasibilityStatus::AllNonNegative;
  if (status == FeasibilityStatus::AllZero) {
    report.lambda_hat = 0.0;
    report.statistic = 0.0;
    report.reject = false;
    report.diagnostics.notes.push_back(
        "all counts equal the centering; every lambda is a root, 0 reported");
    return InfeasibleOutcome::Decided;
  }
  if (status == evidence_high) {
    if (n < kEvidenceFloor)
      throw NoRootError(std::string("no finite root: counts are ") +
                            to_string(status) + " and n < 30",
                        status);
    report.lambda_hat = upper ? kInf : -kInf;
    report.statistic = report.lambda_hat;
    report.reject = true;
    report.diagnostics.notes.push_back(reject_note);
    return InfeasibleOutcome::Decided;
  }
  // one-sided evidence absent entirely
  report.lambda_hat = upper ? -kInf : kInf;
  report.statistic = report.lambda_hat;
  report.reject = false;
  report.diagnostics.notes.push_back(fail_note);
  return InfeasibleOutcome::Decided;
}

void fill_degenerate_p_value(TestReport& report) {
  // statistic is 0 or +-inf on the decided paths; 1 - Phi still applies
  if (std::isinf(report.statistic))
    report.p_value = report.statistic > 0 ? 0.0 : 1.0;
  else
    report.p_value = normal_sf(report.statistic);
}

}  // namespace

std::vector<double> motif_counts(const std::vector<Graph>& samples,
                                 const Motif& H) {
  if (samples.empty()) throw EmptySampleError("no graphs supplied");
  const int m = samples.front().vertex_count();
  std::vector<double> counts;
  counts.reserve(samples.size());
  for (const Graph& g : samples) {
    if (g.vertex_count() != m)
      throw IncompatibleSamplesError(
          "samples mix vertex counts " + std::to_string(m) + " and " +
          std::to_string(g.vertex_count()));
    counts.push_back(static_cast<double>(count_motif(g, H)));
  }
  return counts;
}

TestReport gof_fixed(const std::vector<Graph>& samples, const Motif& H,
                     double h0, double alpha) {
  if (samples.size() < 2)
    throw DegenerateSampleError("gof-fixed needs at least two samples");
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha outside (0, 1)");

  TestReport report;
  report.test_id = "gof-fixed";
  report.n = static_cast<long>(samples.size());
  report.m = samples.front().vertex_count();
  report.motif = H.name;
  report.alpha = alpha;
  report.direction = ">";
  report.threshold = normal_quantile(1.0 - alpha);
  report.diagnostics.h0 = h0;

  const std::vector<double> counts = motif_counts(samples, H);
  const CenteredCounts h = center_counts(counts, h0);
  const FeasibilityStatus status = feasibility(h);
  if (handle_one_sided(report, status, report.n,
                       FeasibilityStatus::AllNonNegative,
                       "all counts exceed h0: overwhelming upper-tail evidence",
                       "counts never exceed h0: one-sided evidence absent") ==
      InfeasibleOutcome::Decided) {
    fill_degenerate_p_value(report);
    return report;
  }

  const LagrangeSolution sol = solve_root(h);
  record_solution(report, sol);
  const double sd = sample_sd(counts);
  if (!(sd > 0.0)) throw DegenerateSampleError("zero sample variance");
  // sigma0_hat^2 is the reciprocal sample variance, so the standardized
  // statistic is sqrt(n) lambda_hat / sigma0_hat = sqrt(n) lambda_hat sd.
  report.diagnostics.sigma_hat = 1.0 / sd;
  report.statistic = std::sqrt(static_cast<double>(report.n)) * sol.lambda_hat * sd;
  report.p_value = normal_sf(report.statistic);
  report.reject = report.statistic > report.threshold;
  return report;
}

std::function<double(const Graph&)> er_pmf(int m, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("edge probability outside [0, 1]");
  const double slots = static_cast<double>(pair_count(m));
  return [p, slots](const Graph& g) {
    const double e = static_cast<double>(g.edge_count());
    return std::pow(p, e) * std::pow(1.0 - p, slots - e);
  };
}

double exact_lambda_fixed(int m, const std::function<double(const Graph&)>& pmf,
                          const Motif& H, double h0) {
  if (m < 1 || m > 5)
    throw SizeLimitError("exact enumeration is gated to m <= 5");
  const std::size_t slots = pair_count(m);
  const std::uint64_t total_graphs = std::uint64_t{1} << slots;

  std::vector<WeightedPoint> points;
  double total_mass = 0.0;
  for (std::uint64_t id = 0; id < total_graphs; ++id) {
    Graph g(m);
    for (std::size_t k = 0; k < slots; ++k)
      if ((id >> k) & 1u) g.set_slot(k, true);
    const double prob = pmf(g);
    if (prob < 0.0) throw DomainError("pmf returned a negative probability");
    if (prob == 0.0) continue;
    total_mass += prob;
    const double a = static_cast<double>(count_motif(g, H)) - h0;
    points.push_back({a, std::log(prob)});
  }
  if (!(total_mass > 0.0)) throw DomainError("pmf assigns no mass");
  return solve_root_weighted(points).lambda_hat;
}

TestReport gof_sparse(const std::vector<Graph>& samples, const SparseSpec& spec) {
  require_strictly_balanced(spec.H, "gof-sparse");
  if (!(spec.c0 > 0.0)) throw DomainError("c0 must be positive");
  if (!(spec.alpha > 0.0 && spec.alpha < 1.0)) throw DomainError("alpha outside (0, 1)");
  if (samples.empty()) throw EmptySampleError("no graphs supplied");

  const double mu0 = std::pow(spec.c0, spec.H.v) / static_cast<double>(spec.H.aut);

  TestReport report;
  report.test_id = "gof-sparse";
  report.n = static_cast<long>(samples.size());
  report.m = samples.front().vertex_count();
  report.motif = spec.H.name;
  report.alpha = spec.alpha;
  report.direction = ">";
  const double scale_root = std::sqrt(mu0 * static_cast<double>(report.n));
  report.threshold = normal_quantile(1.0 - spec.alpha) / scale_root;
  report.diagnostics.h0 = mu0;
  report.diagnostics.mu_hat = mu0;

  // The CLT needs m to outgrow n^{1/(2(2-k))}; checkable only for k(H) < 2.
  const double k = spec.H.k();
  if (k < 2.0) {
    const double floor =
        std::pow(static_cast<double>(report.n), 1.0 / (2.0 * (2.0 - k)));
    if (static_cast<double>(report.m) < floor)
      report.diagnostics.warnings.push_back(
          "growth condition m >> n^(1/(2(2-k))) not met: m = " +
          std::to_string(report.m) + " < " + std::to_string(floor));
  }

  const std::vector<double> counts = motif_counts(samples, spec.H);
  const CenteredCounts h = center_counts(counts, mu0);
  const FeasibilityStatus status = feasibility(h);
  if (handle_one_sided(report, status, report.n,
                       FeasibilityStatus::AllNonNegative,
                       "all counts exceed mu0: overwhelming upper-tail evidence",
                       "counts never exceed mu0: one-sided evidence absent") ==
      InfeasibleOutcome::Decided) {
    if (std::isinf(report.statistic))
      report.p_value = report.statistic > 0 ? 0.0 : 1.0;
    else
      report.p_value = normal_sf(scale_root * report.statistic);
    return report;
  }

  const LagrangeSolution sol = solve_root(h);
  record_solution(report, sol);
  report.statistic = sol.lambda_hat;
  report.p_value = normal_sf(scale_root * sol.lambda_hat);
  report.reject = report.statistic > report.threshold;
  return report;
}

TestReport two_sample_sparse(const std::vector<Graph>& sample1,
                             const std::vector<Graph>& sample2,
                             const SparseSpec& spec) {
  require_strictly_balanced(spec.H, "two-sample-sparse");
  if (!(spec.c0 > 0.0)) throw DomainError("c0 must be positive");
  if (!(spec.alpha > 0.0 && spec.alpha < 1.0)) throw DomainError("alpha outside (0, 1)");
  if (sample1.empty() || sample2.empty())
    throw EmptySampleError("both samples must be nonempty");

  const double h0 = std::pow(spec.c0, spec.H.v) / static_cast<double>(spec.H.aut);

  TestReport report;
  report.test_id = "two-sample-sparse";
  report.n1 = static_cast<long>(sample1.size());
  report.n2 = static_cast<long>(sample2.size());
  report.n = report.n1 + report.n2;
  report.m = sample1.front().vertex_count();
  report.motif = spec.H.name;
  report.alpha = spec.alpha;
  report.direction = ">";
  report.diagnostics.h0 = h0;

  const CenteredCounts h1 = center_counts(motif_counts(sample1, spec.H), h0);
  const CenteredCounts h2 = center_counts(motif_counts(sample2, spec.H), h0);
  const FeasibilityStatus s1 = feasibility(h1);
  const FeasibilityStatus s2 = feasibility(h2);
  report.diagnostics.feasibility = to_string(s1);
  report.diagnostics.feasibility_2 = to_string(s2);
  // AllZero has the canonical root 0; one-sided supports have none.
  for (auto [which, status] : {std::pair{1, s1}, std::pair{2, s2}}) {
    if (status == FeasibilityStatus::AllNonNegative ||
        status == FeasibilityStatus::AllNonPositive)
      throw TwoSampleInfeasibleError(
          "sample " + std::to_string(which) + " is infeasible (" +
              to_string(status) + "): no finite multiplier",
          which, status);
  }

  const LagrangeSolution sol1 = solve_root(h1);
  const LagrangeSolution sol2 = solve_root(h2);
  report.lambda_hat = sol1.lambda_hat;
  report.lambda_hat_2 = sol2.lambda_hat;
  report.diagnostics.solver_iterations = sol1.iterations;
  report.diagnostics.solver_iterations_2 = sol2.iterations;
  report.diagnostics.residual = sol1.residual;
  report.diagnostics.residual_2 = sol2.residual;

  const double lambda_bar = 0.5 * (sol1.lambda_hat + sol2.lambda_hat);
  const double mu_hat = h0 * std::exp(lambda_bar);
  const PoissonTilt tilt = make_tilt(mu_hat, h0);
  const double f = centered_tilt_moment2(tilt, lambda_bar);
  const double g = centered_tilt_variance(tilt, lambda_bar);
  const double inv_n = 1.0 / static_cast<double>(report.n1) +
                       1.0 / static_cast<double>(report.n2);
  const double sigma_hat = std::sqrt(inv_n * g / (f * f));
  report.diagnostics.mu_hat = mu_hat;
  report.diagnostics.variance_num = g;
  report.diagnostics.variance_den = f;
  report.diagnostics.sigma_hat = sigma_hat;

  report.statistic = std::fabs(sol1.lambda_hat - sol2.lambda_hat);
  report.threshold = sigma_hat * normal_quantile(1.0 - spec.alpha / 2.0);
  report.p_value = 2.0 * normal_sf(report.statistic / sigma_hat);
  report.reject = report.statistic > report.threshold;
  return report;
}

namespace {

// Null edge parameter and its provenance for the dense GOF test.
double dense_null_p(const DenseSpec& spec, Diagnostics& diagnostics) {
  if (spec.p0.has_value() == spec.beta0.has_value())
    throw DomainError("dense null must be exactly one of p0 or beta0");
  if (spec.p0) {
    if (!(*spec.p0 > 0.0 && *spec.p0 < 1.0))
      throw DomainError("dense null edge probability must lie in (0, 1)");
    diagnostics.p_null = *spec.p0;
    return *spec.p0;
  }
  const SubcriticalReport report = subcritical_check(*spec.beta0);
  if (!report.is_subcritical)
    throw NotSubcriticalError("dense test refused: null model is not subcritical",
                              report);
  diagnostics.p_null = report.p_star();
  return report.p_star();
}

double default_c_n(int m) {
  const double m2 = static_cast<double>(m) * m;
  return m2 / std::log(m2);
}

}  // namespace

TestReport gof_dense(const std::vector<Graph>& samples, const DenseSpec& spec) {
  require_strictly_balanced(spec.H, "gof-dense");
  if (samples.empty()) throw EmptySampleError("no graphs supplied");

  TestReport report;
  report.test_id = "gof-dense";
  report.n = static_cast<long>(samples.size());
  report.m = samples.front().vertex_count();
  report.motif = spec.H.name;
  report.direction = "<";

  const double p_null = dense_null_p(spec, report.diagnostics);
  const double h0 = expected_count_er(report.m, p_null, spec.H, /*exact=*/true);
  const double scale = std::pow(static_cast<double>(report.m), spec.H.v - 2);
  const double c_n = spec.c_n > 0.0 ? spec.c_n : default_c_n(report.m);
  report.threshold = -1.0 / c_n;
  report.diagnostics.h0 = h0;
  report.diagnostics.scale = scale;

  const std::vector<double> counts = motif_counts(samples, spec.H);
  const CenteredCounts h = center_counts(counts, h0, scale);
  const FeasibilityStatus status = feasibility(h);
  // one-sided left: all counts below h0 is the overwhelming-evidence side
  if (handle_one_sided(report, status, report.n,
                       FeasibilityStatus::AllNonPositive,
                       "counts never reach h0: overwhelming lower-tail evidence",
                       "all counts exceed h0: one-sided evidence absent") ==
      InfeasibleOutcome::Decided) {
    report.reject = std::isinf(report.statistic)
                        ? report.statistic < 0
                        : report.statistic < report.threshold;
    return report;
  }

  const LagrangeSolution sol = solve_root_scaled(h);
  record_solution(report, sol);
  report.statistic = sol.lambda_hat;
  report.reject = report.statistic < report.threshold;
  return report;
}

TestReport two_sample_dense(const std::vector<Graph>& sample1,
                            const std::vector<Graph>& sample2,
                            const DenseSpec& spec) {
  require_strictly_balanced(spec.H, "two-sample-dense");
  if (sample1.empty() || sample2.empty())
    throw EmptySampleError("both samples must be nonempty");
  if (!(spec.epsilon > 0.0 && spec.epsilon < 1.0))
    throw DomainError("two-sample-dense needs a margin epsilon in (0, 1)");
  if (!(spec.c > 0.0)) throw DomainError("threshold constant c must be positive");
  const int m1 = sample1.front().vertex_count();
  const int m2 = sample2.front().vertex_count();
  if (m1 != m2)
    throw IncompatibleSamplesError("samples have different vertex counts " +
                                   std::to_string(m1) + " and " +
                                   std::to_string(m2));

  TestReport report;
  report.test_id = "two-sample-dense";
  report.n1 = static_cast<long>(sample1.size());
  report.n2 = static_cast<long>(sample2.size());
  report.n = report.n1 + report.n2;
  report.m = m1;
  report.motif = spec.H.name;
  report.direction = ">";

  // centering C(m, v(H)) (1 - eps)^{e(H)}
  double binom = 1.0;
  for (int i = 0; i < spec.H.v; ++i)
    binom = binom * static_cast<double>(m1 - i) / static_cast<double>(i + 1);
  const double h0 = binom * std::pow(1.0 - spec.epsilon, spec.H.e);
  const double scale = std::pow(static_cast<double>(m1), spec.H.v - 2);
  report.diagnostics.h0 = h0;
  report.diagnostics.scale = scale;

  const CenteredCounts h1 = center_counts(motif_counts(sample1, spec.H), h0, scale);
  const CenteredCounts h2 = center_counts(motif_counts(sample2, spec.H), h0, scale);
  const FeasibilityStatus s1 = feasibility(h1);
  const FeasibilityStatus s2 = feasibility(h2);
  report.diagnostics.feasibility = to_string(s1);
  report.diagnostics.feasibility_2 = to_string(s2);
  for (auto [which, status] : {std::pair{1, s1}, std::pair{2, s2}}) {
    if (status == FeasibilityStatus::AllNonNegative ||
        status == FeasibilityStatus::AllNonPositive)
      throw TwoSampleInfeasibleError(
          "sample " + std::to_string(which) + " is infeasible (" +
              to_string(status) + "): no finite multiplier",
          which, status);
  }

  const LagrangeSolution sol1 = solve_root_scaled(h1);
  const LagrangeSolution sol2 = solve_root_scaled(h2);
  report.lambda_hat = sol1.lambda_hat;
  report.lambda_hat_2 = sol2.lambda_hat;
  report.diagnostics.solver_iterations = sol1.iterations;
  report.diagnostics.solver_iterations_2 = sol2.iterations;
  report.diagnostics.residual = sol1.residual;
  report.diagnostics.residual_2 = sol2.residual;

  report.statistic = std::fabs(sol1.lambda_hat - sol2.lambda_hat);
  report.threshold = spec.c / (static_cast<double>(m1) * m1);
  report.reject = report.statistic > report.threshold;
  return report;
}

}  // namespace nettest
