#include <doctest.h>

#include <cmath>
#include <vector>

#include "nettest/lagrange.hpp"
#include "nettest/rng.hpp"
#include "support/oracles.hpp"

using namespace nettest;

namespace {

CenteredCounts counts(std::vector<double> values, double scale = 1.0) {
  CenteredCounts h;
  h.values = std::move(values);
  h.scale = scale;
  return h;
}

// random vector guaranteed to straddle zero
std::vector<double> random_feasible(RngStream& rng, int n, double magnitude) {
  std::vector<double> v;
  v.push_back(-magnitude * (0.1 + rng.next_double()));
  v.push_back(magnitude * (0.1 + rng.next_double()));
  for (int i = 2; i < n; ++i)
    v.push_back(magnitude * (2.0 * rng.next_double() - 1.0));
  return v;
}

double stable_objective(const CenteredCounts& h, double lambda) {
  // recompute the split-LSE objective the solver uses, for monotonicity checks
  double pos = -1e308, neg = -1e308;
  double pos_sum = 0.0, neg_sum = 0.0;
  for (double v : h.values) {
    if (v > 0) pos = std::max(pos, std::log(v) - lambda * v);
    if (v < 0) neg = std::max(neg, std::log(-v) - lambda * v);
  }
  for (double v : h.values) {
    if (v > 0) pos_sum += std::exp(std::log(v) - lambda * v - pos);
    if (v < 0) neg_sum += std::exp(std::log(-v) - lambda * v - neg);
  }
  return (pos + std::log(pos_sum)) - (neg + std::log(neg_sum));
}

}  // namespace

TEST_CASE("feasibility classification") {
  CHECK(feasibility(counts({-1, 1})) == FeasibilityStatus::Feasible);
  CHECK(feasibility(counts({0, 0, 0})) == FeasibilityStatus::AllZero);
  CHECK(feasibility(counts({1, 2})) == FeasibilityStatus::AllNonNegative);
  CHECK(feasibility(counts({0, -3})) == FeasibilityStatus::AllNonPositive);
  CHECK_THROWS_AS(feasibility(counts({})), EmptySampleError);
}

TEST_CASE("closed-form roots") {
  CHECK(solve_root(counts({-1, 1})).lambda_hat == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(solve_root(counts({-1, 2})).lambda_hat ==
        doctest::Approx(std::log(2.0) / 3.0).epsilon(1e-10));
  CHECK(solve_root(counts({-1, -1, 3})).lambda_hat ==
        doctest::Approx(std::log(1.5) / 4.0).epsilon(1e-10));
}

TEST_CASE("all-zero counts return the canonical root") {
  const LagrangeSolution sol = solve_root(counts({0, 0, 0}));
  CHECK(sol.lambda_hat == 0.0);
  CHECK(sol.status == FeasibilityStatus::AllZero);
}

TEST_CASE("one-sided counts have no root") {
  CHECK_THROWS_AS(solve_root(counts({1, 2})), NoRootError);
  CHECK_THROWS_AS(solve_root(counts({-1, 0})), NoRootError);
  try {
    solve_root(counts({1, 2}));
  } catch (const NoRootError& e) {
    CHECK(e.status == FeasibilityStatus::AllNonNegative);
  }
}

TEST_CASE("scaled solve multiplies the root by the scale exactly") {
  CHECK(solve_root_scaled(counts({-1, 1}, 9.0)).lambda_hat == 0.0);
  CHECK(solve_root_scaled(counts({-1, 2}, 1.0)).lambda_hat ==
        doctest::Approx(std::log(2.0) / 3.0).epsilon(1e-10));
  const double unscaled = solve_root(counts({-1, 2})).lambda_hat;
  CHECK(solve_root_scaled(counts({-1, 2}, 10.0)).lambda_hat == 10.0 * unscaled);
}

TEST_CASE("weights tilt and normalize") {
  const std::vector<double> w0 = weights(counts({-1, 1}), 0.0);
  CHECK(w0[0] == doctest::Approx(0.5));
  CHECK(w0[1] == doctest::Approx(0.5));

  const std::vector<double> w = weights(counts({-1, 2}), std::log(2.0) / 3.0);
  CHECK(w[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(w[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));

  const std::vector<double> wz = weights(counts({0, 0}), 0.0);
  CHECK(wz[0] == doctest::Approx(0.5));
}

TEST_CASE("weights at the root satisfy the moment constraint") {
  RngStream rng(21, 0);
  for (int rep = 0; rep < 50; ++rep) {
    const CenteredCounts h = counts(random_feasible(rng, 6, 4.0));
    const double lambda = solve_root(h).lambda_hat;
    const std::vector<double> w = weights(h, lambda);
    double dot = 0.0, total = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      dot += w[i] * h.values[i];
      total += w[i];
      scale += std::fabs(w[i] * h.values[i]);
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::fabs(dot) <= 1e-10 * std::max(1.0, scale));
  }
}

TEST_CASE("stable objective is strictly decreasing on feasible inputs") {
  RngStream rng(22, 0);
  for (int rep = 0; rep < 1000; ++rep) {
    const CenteredCounts h = counts(random_feasible(rng, 2 + rep % 7, 5.0));
    double prev = stable_objective(h, -5.0);
    for (int j = 1; j < 10; ++j) {
      const double lambda = -5.0 + j * (10.0 / 9.0);
      const double cur = stable_objective(h, lambda);
      CHECK(cur < prev);
      prev = cur;
    }
  }
}

TEST_CASE("scaling covariance: h -> k h divides the root by k") {
  RngStream rng(23, 0);
  for (int rep = 0; rep < 100; ++rep) {
    const std::vector<double> base = random_feasible(rng, 5, 3.0);
    const double k = 0.5 + 10.0 * rng.next_double();
    std::vector<double> scaled;
    for (double v : base) scaled.push_back(k * v);
    const double lambda = solve_root(counts(base)).lambda_hat;
    const double lambda_scaled = solve_root(counts(scaled)).lambda_hat;
    CHECK(lambda_scaled * k ==
          doctest::Approx(lambda).epsilon(1e-9).scale(std::fabs(lambda) + 1e-3));
  }
}

TEST_CASE("solver matches the high-precision naive bisection oracle") {
  RngStream rng(24, 0);
  for (int rep = 0; rep < 200; ++rep) {
    const int n = 2 + static_cast<int>(rng.next_double() * 5);
    const CenteredCounts h = counts(random_feasible(rng, n, 5.0));
    const double expected = oracles::bisect_root_naive(h.values);
    const double got = solve_root(h).lambda_hat;
    CHECK(std::fabs(got - expected) <= 1e-9 * std::max(1.0, std::fabs(expected)));
  }
}

TEST_CASE("maxent weights dominate random feasible reweightings in entropy") {
  RngStream rng(25, 0);
  auto entropy = [](const std::vector<double>& w) {
    double s = 0.0;
    for (double x : w)
      if (x > 0) s -= x * std::log(x);
    return s;
  };
  const CenteredCounts h = counts(random_feasible(rng, 8, 3.0));
  const double lambda = solve_root(h).lambda_hat;
  const double best = entropy(weights(h, lambda));
  for (int rep = 0; rep < 100; ++rep) {
    // random feasible candidate: tilt random positive multipliers to satisfy
    // the constraint via the weighted root
    std::vector<WeightedPoint> pts;
    for (double v : h.values)
      pts.push_back({v, 2.0 * rng.next_double() - 1.0});
    const double theta = solve_root_weighted(pts).lambda_hat;
    std::vector<double> cand;
    double total = 0.0;
    for (const WeightedPoint& p : pts) {
      cand.push_back(std::exp(p.log_weight - theta * p.value));
      total += cand.back();
    }
    double dot = 0.0;
    for (std::size_t i = 0; i < cand.size(); ++i) {
      cand[i] /= total;
      dot += cand[i] * h.values[i];
    }
    REQUIRE(std::fabs(dot) < 1e-8);  // candidate is feasible
    CHECK(best >= entropy(cand) - 1e-12);
  }
}

TEST_CASE("extreme magnitudes keep the solve finite") {
  // |h| up to 1e9 and exponent magnitudes up to 1e4
  const CenteredCounts big = counts({-1e9, 1e9, 3e8, -7e8});
  const LagrangeSolution sol_big = solve_root(big);
  CHECK(std::isfinite(sol_big.lambda_hat));
  CHECK(std::isfinite(sol_big.residual));

  // strongly asymmetric: root far from zero, lambda*|h| ~ 1e4
  const CenteredCounts skew = counts({-1.0, 1e-4});
  const LagrangeSolution sol_skew = solve_root(skew);
  CHECK(std::isfinite(sol_skew.lambda_hat));
  CHECK(std::isfinite(sol_skew.residual));
  // root solves 1e-4 e^{-1e-4 l} = e^{l}: l = -ln(1e4)/(1 + 1e-4)
  CHECK(sol_skew.lambda_hat ==
        doctest::Approx(-std::log(1e4) / 1.0001).epsilon(1e-9));
}

TEST_CASE("solution invariants: bracket holds the root, residual is small") {
  RngStream rng(26, 0);
  for (int rep = 0; rep < 100; ++rep) {
    const CenteredCounts h = counts(random_feasible(rng, 6, 100.0));
    const LagrangeSolution sol = solve_root(h);
    CHECK(sol.lambda_hat >= sol.bracket_lo - 1e-9);
    CHECK(sol.lambda_hat <= sol.bracket_hi + 1e-9);
    CHECK(std::fabs(sol.residual) <= 1e-9);
    CHECK(sol.iterations > 0);
  }
}

TEST_CASE("center_counts validates inputs") {
  CHECK_THROWS_AS(center_counts({1.0, std::nan("")}, 0.0), DomainError);
  CHECK_THROWS_AS(center_counts({1.0}, 0.0, -2.0), DomainError);
  const CenteredCounts h = center_counts({3.0, 5.0}, 4.0);
  CHECK(h.values[0] == -1.0);
  CHECK(h.values[1] == 1.0);
  CHECK(h.h0 == 4.0);
}
