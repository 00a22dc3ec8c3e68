#include "nettest/lagrange.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace nettest {

const char* to_string(FeasibilityStatus status) {
  switch (status) {
    case FeasibilityStatus::Feasible: return "feasible";
    case FeasibilityStatus::AllZero: return "all-zero";
    case FeasibilityStatus::AllNonNegative: return "all-non-negative";
    case FeasibilityStatus::AllNonPositive: return "all-non-positive";
  }
  return "unknown";
}

CenteredCounts center_counts(const std::vector<double>& raw, double h0,
                             double scale) {
  if (!std::isfinite(h0)) throw DomainError("centering constant must be finite");
  if (!(scale > 0.0) || !std::isfinite(scale))
    throw DomainError("scale must be a positive finite real");
  CenteredCounts out;
  out.h0 = h0;
  out.scale = scale;
  out.values.reserve(raw.size());
  for (double x : raw) {
    if (!std::isfinite(x)) throw DomainError("counts must be finite");
    out.values.push_back(x - h0);
  }
  return out;
}

namespace {

double log_add_exp(double a, double b) {
  if (a == -std::numeric_limits<double>::infinity()) return b;
  if (b == -std::numeric_limits<double>::infinity()) return a;
  const double hi = std::max(a, b);
  return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

// One side of the split objective: terms log_coef_i - lambda * value_i,
// combined by log-sum-exp.
struct TiltedSide {
  std::vector<double> log_coef;
  std::vector<double> value;

  bool empty() const { return value.empty(); }

  double lse(double lambda) const {
    double hi = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < value.size(); ++i)
      hi = std::max(hi, log_coef[i] - lambda * value[i]);
    if (hi == -std::numeric_limits<double>::infinity()) return hi;
    double sum = 0.0;
    for (std::size_t i = 0; i < value.size(); ++i)
      sum += std::exp(log_coef[i] - lambda * value[i] - hi);
    return hi + std::log(sum);
  }

  // log of sum coef_i * |value_i| * exp(-lambda value_i), i.e. the side's lse
  // with an extra |value| factor; used for the derivative of the objective.
  double lse_weighted_by_value(double lambda) const {
    double hi = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < value.size(); ++i)
      hi = std::max(hi,
                    log_coef[i] + std::log(std::fabs(value[i])) - lambda * value[i]);
    if (hi == -std::numeric_limits<double>::infinity()) return hi;
    double sum = 0.0;
    for (std::size_t i = 0; i < value.size(); ++i)
      sum += std::exp(log_coef[i] + std::log(std::fabs(value[i])) -
                      lambda * value[i] - hi);
    return hi + std::log(sum);
  }
};

// Split stable objective g(lambda) = lse_pos - lse_neg. The root equation
// sum w h exp(-lambda h) = 0 holds iff g(lambda) = 0, and g is strictly
// decreasing on feasible inputs.
struct StableObjective {
  TiltedSide pos;  // log_coef = log w + log h,   h > 0
  TiltedSide neg;  // log_coef = log w + log(-h), h < 0

  double g(double lambda) const { return pos.lse(lambda) - neg.lse(lambda); }

  // g'(lambda) = -(tilted mean of h over the positive side
  //               + tilted mean of |h| over the negative side) < 0
  double gprime(double lambda) const {
    const double a = std::exp(pos.lse_weighted_by_value(lambda) - pos.lse(lambda));
    const double b = std::exp(neg.lse_weighted_by_value(lambda) - neg.lse(lambda));
    return -(a + b);
  }
};

StableObjective build_objective(const std::vector<WeightedPoint>& pts) {
  // merge duplicate values so repeated counts cost one term
  std::vector<WeightedPoint> sorted = pts;
  std::sort(sorted.begin(), sorted.end(),
            [](const WeightedPoint& a, const WeightedPoint& b) {
              return a.value < b.value;
            });
  StableObjective obj;
  std::size_t i = 0;
  while (i < sorted.size()) {
    const double v = sorted[i].value;
    double lw = sorted[i].log_weight;
    ++i;
    while (i < sorted.size() && sorted[i].value == v) {
      lw = log_add_exp(lw, sorted[i].log_weight);
      ++i;
    }
    if (v > 0.0) {
      obj.pos.log_coef.push_back(lw + std::log(v));
      obj.pos.value.push_back(v);
    } else if (v < 0.0) {
      obj.neg.log_coef.push_back(lw + std::log(-v));
      obj.neg.value.push_back(v);
    }
    // zeros contribute nothing to the root equation
  }
  return obj;
}

FeasibilityStatus classify(const std::vector<WeightedPoint>& pts) {
  if (pts.empty()) throw EmptySampleError("no counts supplied");
  bool any_pos = false, any_neg = false;
  for (const WeightedPoint& p : pts) {
    if (!std::isfinite(p.value)) throw DomainError("counts must be finite");
    if (p.value > 0.0) any_pos = true;
    if (p.value < 0.0) any_neg = true;
  }
  if (any_pos && any_neg) return FeasibilityStatus::Feasible;
  if (any_pos) return FeasibilityStatus::AllNonNegative;
  if (any_neg) return FeasibilityStatus::AllNonPositive;
  return FeasibilityStatus::AllZero;
}

LagrangeSolution solve_feasible(const StableObjective& obj) {
  LagrangeSolution sol;
  sol.status = FeasibilityStatus::Feasible;

  // Expand the bracket from [-1, 1] until the decreasing objective changes
  // sign: need g(lo) >= 0 >= g(hi).
  double lo = -1.0, hi = 1.0;
  int iters = 0;
  double glo = obj.g(lo), ghi = obj.g(hi);
  while (ghi > 0.0) {
    lo = hi;
    glo = ghi;
    hi *= 2.0;
    ghi = obj.g(hi);
    if (++iters > 200) throw Error("internal: bracket expansion failed (hi)");
  }
  while (glo < 0.0) {
    hi = lo;
    ghi = glo;
    lo *= 2.0;
    glo = obj.g(lo);
    if (++iters > 400) throw Error("internal: bracket expansion failed (lo)");
  }

  // Bisection to relative width 1e-12, capped at 200 iterations.
  int bisect = 0;
  while (hi - lo > 1e-12 * std::max({1.0, std::fabs(lo), std::fabs(hi)}) &&
         bisect < 200) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // interval at floating-point floor
    const double gm = obj.g(mid);
    if (gm >= 0.0)
      lo = mid;
    else
      hi = mid;
    ++bisect;
  }

  double lambda = 0.5 * (lo + hi);
  // One Newton polish, kept inside the bracket.
  const double gl = obj.g(lambda);
  const double gp = obj.gprime(lambda);
  if (std::isfinite(gl) && std::isfinite(gp) && gp < 0.0) {
    const double step = gl / gp;
    const double candidate = lambda - step;
    if (candidate > lo - (hi - lo) && candidate < hi + (hi - lo))
      lambda = candidate;
  }

  sol.lambda_hat = lambda;
  sol.bracket_lo = lo;
  sol.bracket_hi = hi;
  sol.residual = obj.g(lambda);
  sol.iterations = iters + bisect;
  return sol;
}

LagrangeSolution solve_points(const std::vector<WeightedPoint>& pts) {
  const FeasibilityStatus status = classify(pts);
  if (status == FeasibilityStatus::AllZero) {
    // every lambda is a root; 0 is the canonical choice
    LagrangeSolution sol;
    sol.status = FeasibilityStatus::AllZero;
    return sol;
  }
  if (status != FeasibilityStatus::Feasible)
    throw NoRootError(std::string("no root: counts are ") + to_string(status),
                      status);
  return solve_feasible(build_objective(pts));
}

std::vector<WeightedPoint> as_points(const std::vector<double>& values) {
  std::vector<WeightedPoint> pts;
  pts.reserve(values.size());
  for (double v : values) pts.push_back({v, 0.0});
  return pts;
}

}  // namespace

FeasibilityStatus feasibility(const CenteredCounts& h) {
  return classify(as_points(h.values));
}

FeasibilityStatus feasibility_weighted(const std::vector<WeightedPoint>& pts) {
  return classify(pts);
}

LagrangeSolution solve_root(const CenteredCounts& h) {
  return solve_points(as_points(h.values));
}

LagrangeSolution solve_root_scaled(const CenteredCounts& h) {
  if (!(h.scale > 0.0) || !std::isfinite(h.scale))
    throw DomainError("scale must be a positive finite real");
  LagrangeSolution sol = solve_root(h);
  sol.lambda_hat = h.scale * sol.lambda_hat;
  sol.bracket_lo = h.scale * sol.bracket_lo;
  sol.bracket_hi = h.scale * sol.bracket_hi;
  return sol;
}

LagrangeSolution solve_root_weighted(const std::vector<WeightedPoint>& pts) {
  for (const WeightedPoint& p : pts)
    if (std::isnan(p.log_weight))
      throw DomainError("log weights must not be NaN");
  return solve_points(pts);
}

std::vector<double> weights(const CenteredCounts& h, double lambda_hat) {
  if (!std::isfinite(lambda_hat)) throw DomainError("lambda must be finite");
  if (h.values.empty()) throw EmptySampleError("no counts supplied");
  double hi = -std::numeric_limits<double>::infinity();
  for (double v : h.values) hi = std::max(hi, -lambda_hat * v);
  double sum = 0.0;
  for (double v : h.values) sum += std::exp(-lambda_hat * v - hi);
  const double log_z = hi + std::log(sum);
  std::vector<double> w;
  w.reserve(h.values.size());
  for (double v : h.values) w.push_back(std::exp(-lambda_hat * v - log_z));
  return w;
}

}  // namespace nettest
