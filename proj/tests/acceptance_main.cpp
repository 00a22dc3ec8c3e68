// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Heavier Monte Carlo checks live here rather than in the
// unit tests; every tolerance is pinned in code.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "nettest/counting.hpp"
#include "nettest/lagrange.hpp"
#include "nettest/normal.hpp"
#include "nettest/poisson.hpp"
#include "nettest/rng.hpp"
#include "nettest/sampler.hpp"
#include "nettest/study.hpp"
#include "nettest/tests.hpp"
#include "nettest/variational.hpp"
#include "support/oracles.hpp"

using namespace nettest;

namespace {

struct Harness {
  int failures = 0;
  int index = 0;

  void run(const std::string& name, const std::function<bool(std::string&)>& body) {
    ++index;
    std::string detail;
    bool ok = false;
    const auto start = std::chrono::steady_clock::now();
    try {
      ok = body(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    std::printf("%s criterion %2d: %s (%.1fs)%s%s\n", ok ? "PASS" : "FAIL",
                index, name.c_str(), secs, detail.empty() ? "" : " -- ",
                detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
  }
};

bool within(double value, double target, double tol) {
  return std::fabs(value - target) <= tol;
}

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), pattern, a, b, c);
  return buf;
}

// ---- criterion bodies ----------------------------------------------------

bool root_solver_oracle(std::string& detail) {
  RngStream rng(1001, 0);
  for (int rep = 0; rep < 200; ++rep) {
    const int n = 2 + static_cast<int>(rng.next_double() * 5);
    std::vector<double> h;
    h.push_back(-5.0 * (0.05 + 0.95 * rng.next_double()));
    h.push_back(5.0 * (0.05 + 0.95 * rng.next_double()));
    for (int i = 2; i < n; ++i) h.push_back(5.0 * (2.0 * rng.next_double() - 1.0));
    CenteredCounts counts;
    counts.values = h;
    const double got = solve_root(counts).lambda_hat;
    const double expected = oracles::bisect_root_naive(h);
    if (std::fabs(got - expected) > 1e-9 * std::max(1.0, std::fabs(expected))) {
      detail = fmt("mismatch %.12g vs %.12g", got, expected);
      return false;
    }
  }
  CenteredCounts a;
  a.values = {-1.0, 2.0};
  if (!within(solve_root(a).lambda_hat, std::log(2.0) / 3.0, 1e-10)) {
    detail = "closed form {-1,2} missed";
    return false;
  }
  CenteredCounts b;
  b.values = {-1.0, -1.0, 3.0};
  if (!within(solve_root(b).lambda_hat, std::log(1.5) / 4.0, 1e-10)) {
    detail = "closed form {-1,-1,3} missed";
    return false;
  }
  return true;
}

bool poisson_closed_forms(std::string& detail) {
  for (double mu : {0.5, 4.0 / 3.0, 2.0, 5.0}) {
    for (double h0 : {0.5, 4.0 / 3.0, 3.0}) {
      const PoissonTilt tilt = make_tilt(mu, h0);
      for (double lambda : {0.0, 0.1, 0.3, 1.0}) {
        struct Pair {
          double got, want;
          const char* name;
        };
        const Pair pairs[] = {
            {tilted_mgf(mu, lambda), oracles::series_mgf(mu, lambda), "mgf"},
            {centered_tilt_mean(tilt, lambda),
             oracles::series_centered_mean(mu, h0, lambda), "mean"},
            {centered_tilt_moment2(tilt, lambda),
             oracles::series_centered_moment2(mu, h0, lambda), "moment2"},
            {centered_tilt_variance(tilt, lambda),
             oracles::series_centered_variance(mu, h0, lambda), "variance"},
        };
        for (const Pair& p : pairs) {
          // relative 1e-10, absolute floor where the value is exactly zero
          const double scale = std::max(1.0, std::fabs(p.want));
          if (std::fabs(p.got - p.want) > 1e-10 * scale) {
            detail = fmt((std::string(p.name) + " off at mu=%g h0=%g l=%g").c_str(),
                         mu, h0, lambda);
            return false;
          }
        }
      }
    }
  }

  // Monte Carlo agreement: 1e6 draws reproduce f and g within 4 SE
  const double mu = 2.0, h0 = 1.0, lambda = 0.3;
  const PoissonTilt tilt = make_tilt(mu, h0);
  RngStream rng(1002, 0);
  const int draws = 1000000;
  double sum_f = 0.0, sq_f = 0.0, sum_y = 0.0, sq_y = 0.0, quad_y = 0.0;
  for (int i = 0; i < draws; ++i) {
    const double z = static_cast<double>(oracles::poisson_draw(mu, rng));
    const double y = (z - h0) * std::exp(-lambda * (z - h0));
    const double f_term = (z - h0) * (z - h0) * std::exp(-lambda * (z - h0));
    sum_f += f_term;
    sq_f += f_term * f_term;
    sum_y += y;
    sq_y += y * y;
    quad_y += y * y * y * y;
  }
  const double f_mc = sum_f / draws;
  const double f_se = std::sqrt((sq_f / draws - f_mc * f_mc) / draws);
  const double f_closed = centered_tilt_moment2(tilt, lambda);
  if (std::fabs(f_mc - f_closed) > 4.0 * f_se) {
    detail = fmt("f: mc %.6g vs closed %.6g", f_mc, f_closed);
    return false;
  }
  const double mean_y = sum_y / draws;
  const double m2_y = sq_y / draws;
  const double g_mc = m2_y - mean_y * mean_y;
  // se of the variance estimate via the fourth moment
  const double var_of_sq = quad_y / draws - m2_y * m2_y;
  const double g_se = std::sqrt((var_of_sq + 4.0 * m2_y * mean_y * mean_y) / draws);
  const double g_closed = centered_tilt_variance(tilt, lambda);
  if (std::fabs(g_mc - g_closed) > 4.0 * g_se) {
    detail = fmt("g: mc %.6g vs closed %.6g", g_mc, g_closed);
    return false;
  }
  return true;
}

bool lambda_star_identity(std::string& detail) {
  for (double ratio : {0.5, 1.0, 4.0 / 3.0, 2.0, 4.0}) {
    const double h0 = 1.3;
    const PoissonTilt tilt = make_tilt(ratio * h0, h0);
    double lo = -40.0, hi = 40.0;
    for (int i = 0; i < 220; ++i) {
      const double mid = 0.5 * (lo + hi);
      if (centered_tilt_mean(tilt, mid) >= 0.0)
        lo = mid;
      else
        hi = mid;
    }
    const double bisected = 0.5 * (lo + hi);
    if (!within(bisected, std::log(ratio), 1e-9)) {
      detail = fmt("ratio %g: bisection %.12g vs log %.12g", ratio, bisected,
                   std::log(ratio));
      return false;
    }
    if (!within(lambda_star(tilt), std::log(ratio), 1e-12)) {
      detail = "closed form drifted";
      return false;
    }
  }
  return true;
}

bool fixed_size_consistency(std::string& detail) {
  const double h0 = 1.0;
  const double lambda_pop =
      exact_lambda_fixed(5, er_pmf(5, 0.5), triangle_motif(), h0);
  const ErModel model = make_er(5, 0.5);
  int hits = 0;
  const int replications = 100;
  const int n = 100000;
  for (int r = 0; r < replications; ++r) {
    RngStream rng(2000, static_cast<std::uint64_t>(r));
    std::vector<double> counts(n);
    for (int i = 0; i < n; ++i) {
      const Graph g = sample_er(model, rng);
      counts[i] = static_cast<double>(count_motif(g, triangle_motif()));
    }
    const double lambda_hat =
        solve_root(center_counts(counts, h0)).lambda_hat;
    if (std::fabs(lambda_hat - lambda_pop) < 0.02) ++hits;
  }
  detail = fmt("population root %.6g, |error| < 0.02 in %g/100", lambda_pop,
               static_cast<double>(hits));
  return hits >= 95;
}

StudyConfig sparse_gof_config(double c_true, int R, long n, std::uint64_t seed) {
  StudyConfig config;
  config.generator.kind = GeneratorSpec::Kind::Er;
  config.generator.er = make_er(100, c_true / 100.0);  // k(triangle) = 1
  config.test.kind = TestSpec::Kind::GofSparse;
  config.test.H = triangle_motif();
  config.test.c0 = 2.0;
  config.test.alpha = 0.05;
  config.replications = R;
  config.n = n;
  config.seed = seed;
  config.workers = 1;
  return config;
}

StudyResult g_sparse_null_study;  // shared between criteria 5 and 8

bool sparse_gof_level(std::string& detail) {
  g_sparse_null_study = mc_study(sparse_gof_config(2.0, 500, 500, 3001));
  detail = fmt("rejection rate %.4f", g_sparse_null_study.rejection_rate);
  return g_sparse_null_study.rejection_rate >= 0.03 &&
         g_sparse_null_study.rejection_rate <= 0.08;
}

bool sparse_gof_power(std::string& detail) {
  const StudyResult result = mc_study(sparse_gof_config(3.0, 500, 500, 3002));
  detail = fmt("rejection rate %.4f (population multiplier %.4f)",
               result.rejection_rate, 3.0 * std::log(1.5));
  return result.rejection_rate >= 0.95;
}

bool sparse_two_sample(std::string& detail) {
  auto config = [](double c1, double c2, std::uint64_t seed) {
    StudyConfig cfg;
    cfg.generator.er = make_er(100, c1 / 100.0);
    cfg.generator2 = cfg.generator;
    cfg.generator2->er = make_er(100, c2 / 100.0);
    cfg.test.kind = TestSpec::Kind::TwoSampleSparse;
    cfg.test.H = triangle_motif();
    cfg.test.c0 = 1.5;
    cfg.test.alpha = 0.05;
    cfg.replications = 500;
    cfg.n = 400;
    cfg.n2 = 600;
    cfg.seed = seed;
    return cfg;
  };
  const StudyResult null_run = mc_study(config(2.0, 2.0, 3003));
  if (null_run.rejection_rate < 0.03 || null_run.rejection_rate > 0.08) {
    detail = fmt("null rate %.4f outside [0.03, 0.08]", null_run.rejection_rate);
    return false;
  }
  const StudyResult alt_run = mc_study(config(2.0, 3.0, 3004));
  detail = fmt("null rate %.4f, alternative rate %.4f", null_run.rejection_rate,
               alt_run.rejection_rate);
  return alt_run.rejection_rate >= 0.9;
}

bool sparse_clt_shape(std::string& detail) {
  const StudyResult& study = g_sparse_null_study;
  if (study.per_replication.empty()) {
    detail = "criterion 5 must run first";
    return false;
  }
  const double mu0 = 4.0 / 3.0;
  std::vector<double> scaled;
  scaled.reserve(study.per_replication.size());
  for (const ReplicationStat& s : study.per_replication)
    scaled.push_back(std::sqrt(500.0) * s.lambda_hat);
  const double sd = oracles::sd_of(scaled);
  const double target = 1.0 / std::sqrt(mu0);
  if (std::fabs(sd - target) > 0.15 * target) {
    detail = fmt("sd %.4f vs 1/sqrt(mu0) %.4f", sd, target);
    return false;
  }
  std::sort(scaled.begin(), scaled.end());
  std::vector<double> quantiles(scaled.size());
  for (std::size_t i = 0; i < scaled.size(); ++i)
    quantiles[i] = normal_quantile((static_cast<double>(i) + 0.5) / scaled.size());
  const double corr = oracles::pearson(scaled, quantiles);
  detail = fmt("sd %.4f (target %.4f), qq correlation %.5f", sd, target, corr);
  return corr >= 0.99;
}

bool variational_identities(std::string& detail) {
  const double beta1 = 0.5 * std::log(0.35 / 0.65);
  const ErgmModel er_null = make_ergm(2, {{edge_motif(), beta1}});
  const VariationalModel at_35 =
      make_variational_model(er_null, triangle_motif(), 0.35);
  const double u0 = maximize_u(0.0, at_35).u_star;
  if (!within(u0, 0.35, 1e-6)) {
    detail = fmt("u*(0) = %.8f", u0);
    return false;
  }
  const double p_fix = subcritical_check(er_null).p_star();
  const VariationalModel at_fix =
      make_variational_model(er_null, triangle_motif(), p_fix);
  const double lc = lambda_circ(at_fix);
  if (!within(lc, 0.0, 1e-6)) {
    detail = fmt("lambda_circ at the null = %.3g", lc);
    return false;
  }
  // convexity of g on [-5, 5]
  const VariationalModel probe = make_variational_model(
      make_ergm(2, {{edge_motif(), 0.5 * std::log(0.3 / 0.7)}}), triangle_motif(),
      0.5);
  std::vector<double> values(201);
  for (int i = 0; i < 201; ++i)
    values[i] = g_of_lambda(-5.0 + 10.0 * i / 200.0, probe);
  for (int i = 1; i + 1 < 201; ++i) {
    if (values[i - 1] + values[i + 1] - 2.0 * values[i] < -1e-8) {
      detail = fmt("convexity violated near lambda %.3f", -5.0 + 10.0 * i / 200.0);
      return false;
    }
  }
  // u*(lambda_circ) returns to p0
  const double lc_probe = lambda_circ(probe);
  const double u_at = maximize_u(lc_probe, probe).u_star;
  detail = fmt("u*(0) %.7f, lambda_circ %.2e, u*(lambda_circ) %.7f", u0, lc,
               u_at);
  return within(u_at, probe.p0, 1e-6);
}

bool dense_scaled_identity(std::string& detail) {
  RngStream rng(4001, 0);
  const double p_null = 0.3;
  int checked = 0;
  for (int rep = 0; rep < 50; ++rep) {
    const int m = 10 + static_cast<int>(rng.next_double() * 20);
    const int n = 20 + static_cast<int>(rng.next_double() * 30);
    const ErModel model = make_er(m, 0.25 + 0.2 * rng.next_double());
    std::vector<Graph> samples;
    samples.reserve(n);
    for (int i = 0; i < n; ++i) samples.push_back(sample_er(model, rng));

    std::vector<double> counts;
    for (const Graph& g : samples)
      counts.push_back(static_cast<double>(count_motif(g, triangle_motif())));
    const double h0 = expected_count_er(m, p_null, triangle_motif(), true);
    const CenteredCounts centered = center_counts(counts, h0);
    if (feasibility(centered) != FeasibilityStatus::Feasible) continue;

    DenseSpec spec;
    spec.p0 = p_null;
    spec.H = triangle_motif();
    const TestReport report = gof_dense(samples, spec);
    const double unscaled = solve_root(centered).lambda_hat;
    const double scale =
        std::pow(static_cast<double>(m), triangle_motif().v - 2);
    if (report.lambda_hat != scale * unscaled) {
      detail = fmt("m=%g: scaled root is not exactly m^{v-2} times %.17g",
                   static_cast<double>(m), unscaled);
      return false;
    }
    ++checked;
  }
  detail = fmt("%g of 50 sample sets feasible and exact", static_cast<double>(checked));
  return checked >= 30;
}

bool dense_separation(std::string& detail) {
  // Desk-scale substitute for the dense asymptotics: with the threshold
  // scale frozen at c_n = 2 (calibrated once), the null rejects rarely and
  // a lower alternative is flagged with a negative multiplier.
  auto config = [](double p_data, std::uint64_t seed) {
    StudyConfig cfg;
    cfg.generator.er = make_er(30, p_data);
    cfg.test.kind = TestSpec::Kind::GofDense;
    cfg.test.H = triangle_motif();
    cfg.test.p0 = 0.3;
    cfg.test.c_n = 2.0;  // frozen pilot calibration
    cfg.replications = 200;
    cfg.n = 200;
    cfg.seed = seed;
    return cfg;
  };
  const StudyResult null_run = mc_study(config(0.3, 5001));
  if (null_run.rejection_rate > 0.10) {
    detail = fmt("null rejection rate %.4f > 0.10", null_run.rejection_rate);
    return false;
  }
  const StudyResult alt_run = mc_study(config(0.2, 5002));
  int negative = 0;
  for (const ReplicationStat& s : alt_run.per_replication)
    if (s.lambda_hat < 0.0) ++negative;
  const double neg_rate =
      static_cast<double>(negative) / alt_run.per_replication.size();
  detail = fmt("null rate %.3f, alt negative %.3f, alt reject %.3f",
               null_run.rejection_rate, neg_rate, alt_run.rejection_rate);
  return neg_rate >= 0.95 && alt_run.rejection_rate >= 0.90;
}

bool ergm_sampler_correctness(std::string& detail) {
  // total variation against full enumeration at m = 4
  const ErgmModel model =
      make_ergm(4, {{edge_motif(), 0.2}, {triangle_motif(), 0.1}});
  SamplerConfig config;
  config.seed = 6001;
  config.burn_in = 50;
  config.thin = 5;
  const int n = 150000;
  const std::vector<Graph> samples = sample_ergm(model, config, n);

  const std::size_t slots = pair_count(4);
  std::vector<double> freq(std::size_t{1} << slots, 0.0);
  for (const Graph& g : samples) {
    std::size_t id = 0;
    for (std::size_t k = 0; k < slots; ++k)
      if (g.test_slot(k)) id |= std::size_t{1} << k;
    freq[id] += 1.0;
  }
  // exact probabilities
  std::vector<double> exact(freq.size());
  double log_max = -1e300;
  for (std::size_t id = 0; id < exact.size(); ++id) {
    Graph g(4);
    for (std::size_t k = 0; k < slots; ++k)
      if ((id >> k) & 1u) g.set_slot(k, true);
    exact[id] = ergm_hamiltonian(g, model);
    log_max = std::max(log_max, exact[id]);
  }
  double z = 0.0;
  for (double& w : exact) {
    w = std::exp(w - log_max);
    z += w;
  }
  double tv = 0.0;
  for (std::size_t id = 0; id < exact.size(); ++id)
    tv += std::fabs(freq[id] / n - exact[id] / z);
  tv /= 2.0;
  if (tv > 0.02) {
    detail = fmt("total variation %.4f > 0.02", tv);
    return false;
  }

  // mean edge density at m = 30 within 3 MC standard errors of p*
  const ErgmModel big =
      make_ergm(30, {{edge_motif(), -0.35}, {triangle_motif(), 0.05}});
  const double p_star = subcritical_check(big).p_star();
  SamplerConfig big_config;
  big_config.seed = 6002;
  big_config.burn_in = 100;
  big_config.thin = 5;
  const int n_big = 400;
  const std::vector<Graph> big_samples = sample_ergm(big, big_config, n_big);
  std::vector<double> densities;
  densities.reserve(big_samples.size());
  const double slots_big = static_cast<double>(pair_count(30));
  for (const Graph& g : big_samples)
    densities.push_back(static_cast<double>(g.edge_count()) / slots_big);
  const double mean = oracles::mean_of(densities);
  const double se = oracles::sd_of(densities) / std::sqrt(static_cast<double>(n_big));
  detail = fmt("tv %.4f; density %.5f vs p* %.5f (se %.2g)", tv, mean, p_star);
  return std::fabs(mean - p_star) <= 3.0 * se;
}

}  // namespace

int main() {
  Harness harness;
  harness.run("root-solver oracle equivalence", root_solver_oracle);
  harness.run("Poisson closed forms vs series and Monte Carlo", poisson_closed_forms);
  harness.run("lambda_star identity", lambda_star_identity);
  harness.run("fixed-size consistency, G(5, 0.5) triangle", fixed_size_consistency);
  harness.run("sparse GOF level", sparse_gof_level);
  harness.run("sparse GOF power", sparse_gof_power);
  harness.run("sparse two-sample level and power", sparse_two_sample);
  harness.run("sparse CLT shape", sparse_clt_shape);
  harness.run("variational identities", variational_identities);
  harness.run("dense scaled-solver identity", dense_scaled_identity);
  harness.run("dense regime separation", dense_separation);
  harness.run("ERGM sampler correctness", ergm_sampler_correctness);

  if (harness.failures == 0) {
    std::printf("all %d acceptance criteria passed\n", harness.index);
    return 0;
  }
  std::printf("%d of %d acceptance criteria failed\n", harness.failures,
              harness.index);
  return 1;
}
