#include "nettest/variational.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace nettest {

namespace {

constexpr int kGridPoints = 10001;
constexpr double kClamp = 1e-12;
constexpr double kNearTie = 1e-6;

double clamp_unit(double u) {
  return std::min(1.0 - kClamp, std::max(kClamp, u));
}

double logit(double u) { return std::log(u / (1.0 - u)); }

// d/du of the objective; the entropy part contributes -logit(u)/2.
double objective_slope(double lambda, double u, const VariationalModel& model) {
  const double uc = clamp_unit(u);
  double slope = -lambda * model.H.e *
                 std::pow(uc, model.H.e - 1) / static_cast<double>(model.H.aut);
  slope += ergm_field(model.ergm, uc);
  slope -= 0.5 * logit(uc);
  return slope;
}

}  // namespace

VariationalModel make_variational_model(ErgmModel ergm, Motif H, double p0) {
  if (!(p0 > 0.0 && p0 < 1.0))
    throw DomainError("reference edge parameter must lie in (0, 1)");
  const SubcriticalReport report = subcritical_check(ergm);
  if (!report.is_subcritical)
    throw NotSubcriticalError("variational model requires a subcritical ERGM",
                              report);
  return VariationalModel{std::move(ergm), std::move(H), p0};
}

double entropy_I(double u) {
  if (!(u >= 0.0 && u <= 1.0)) throw DomainError("entropy argument outside [0, 1]");
  double total = 0.0;
  if (u > 0.0) total += u * std::log(u);
  if (u < 1.0) total += (1.0 - u) * std::log(1.0 - u);
  return total;
}

double objective(double lambda, double u, const VariationalModel& model) {
  double value = -lambda * std::pow(u, model.H.e) / static_cast<double>(model.H.aut);
  for (const ErgmTerm& term : model.ergm.terms)
    value += term.beta * std::pow(u, term.motif.e);
  value -= 0.5 * entropy_I(u);
  return value;
}

VariationalResult maximize_u(double lambda, const VariationalModel& model) {
  std::vector<double> grid(kGridPoints);
  for (int i = 0; i < kGridPoints; ++i) {
    const double u = static_cast<double>(i) / (kGridPoints - 1);
    grid[i] = objective(lambda, u, model);
  }

  // interior local maxima on the grid (the entropy slope diverges at the
  // boundary, so maximizers are interior)
  struct Candidate {
    double u = 0.0;
    double value = 0.0;
  };
  std::vector<Candidate> maxima;
  for (int i = 1; i + 1 < kGridPoints; ++i) {
    if (grid[i] >= grid[i - 1] && grid[i] >= grid[i + 1]) {
      const double step = 1.0 / (kGridPoints - 1);
      double lo = (i - 1) * step, hi = (i + 1) * step;
      double u = i * step;
      // The slope crosses + -> - inside [lo, hi]; safeguarded Newton.
      double slo = objective_slope(lambda, lo, model);
      double shi = objective_slope(lambda, hi, model);
      if (slo >= 0.0 && shi <= 0.0) {
        for (int it = 0; it < 100; ++it) {
          const double s = objective_slope(lambda, u, model);
          if (s >= 0.0)
            lo = u;
          else
            hi = u;
          // curvature of the objective at u
          const double uc = clamp_unit(u);
          double curv = -lambda * model.H.e * (model.H.e - 1) *
                        std::pow(uc, model.H.e - 2) /
                        static_cast<double>(model.H.aut);
          for (const ErgmTerm& term : model.ergm.terms) {
            const int e = term.motif.e;
            if (e >= 2) curv += term.beta * e * (e - 1) * std::pow(uc, e - 2);
          }
          curv -= 0.5 * (1.0 / uc + 1.0 / (1.0 - uc));
          double next = (std::isfinite(curv) && curv < 0.0) ? u - s / curv
                                                            : 0.5 * (lo + hi);
          if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
          if (std::fabs(next - u) < 1e-15) {
            u = next;
            break;
          }
          u = next;
        }
      }
      u = clamp_unit(u);
      maxima.push_back({u, objective(lambda, u, model)});
    }
  }
  if (maxima.empty()) {
    // flat grid (e.g. identical values): fall back to the best grid point
    int best = 0;
    for (int i = 1; i < kGridPoints; ++i)
      if (grid[i] > grid[best]) best = i;
    const double u = clamp_unit(static_cast<double>(best) / (kGridPoints - 1));
    maxima.push_back({u, objective(lambda, u, model)});
  }

  std::sort(maxima.begin(), maxima.end(),
            [](const Candidate& a, const Candidate& b) { return a.value > b.value; });
  VariationalResult result;
  result.u_star = maxima[0].u;
  result.value = maxima[0].value;
  for (std::size_t i = 1; i < maxima.size(); ++i) {
    if (maxima[0].value - maxima[i].value < kNearTie &&
        std::fabs(maxima[0].u - maxima[i].u) > 1e-4) {
      result.multiplicity_flag = true;
      break;
    }
  }
  return result;
}

double g_of_lambda(double lambda, const VariationalModel& model) {
  const double linear = lambda * std::pow(model.p0, model.H.e) /
                        static_cast<double>(model.H.aut);
  return linear + maximize_u(lambda, model).value -
         maximize_u(0.0, model).value;
}

double lambda_circ(const VariationalModel& model) {
  const double target = std::pow(model.p0, model.H.e) /
                        static_cast<double>(model.H.aut);
  auto derivative = [&](double lambda) {
    const double u = maximize_u(lambda, model).u_star;
    return target - std::pow(u, model.H.e) / static_cast<double>(model.H.aut);
  };

  // u*(lambda) is non-increasing, so the derivative is non-decreasing.
  double lo = -1.0, hi = 1.0;
  double dlo = derivative(lo), dhi = derivative(hi);
  while (dhi < 0.0) {
    lo = hi;
    dlo = dhi;
    hi *= 2.0;
    if (hi > 1e3)
      throw NoCriticalPointError("no critical point found within |lambda| <= 1e3");
    dhi = derivative(hi);
  }
  while (dlo > 0.0) {
    hi = lo;
    dhi = dlo;
    lo *= 2.0;
    if (lo < -1e3)
      throw NoCriticalPointError("no critical point found within |lambda| <= 1e3");
    dlo = derivative(lo);
  }
  while (hi - lo > 1e-9) {
    const double mid = 0.5 * (lo + hi);
    if (derivative(mid) <= 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

SharpRate sharp_rate_from(double u_star, double p0, const Motif& H) {
  const double diff = std::pow(u_star, H.e) - std::pow(p0, H.e);
  if (std::fabs(diff) < 1e-8) return SharpRate{true, 0.0};
  return SharpRate{false, static_cast<double>(H.aut) / diff};
}

SharpRate sharp_rate_constant(const VariationalModel& model, double lambda_circ) {
  if (!(lambda_circ < 0.0))
    throw RegimeError("sharp rate is defined only for lambda_circ < 0");
  const VariationalResult res = maximize_u(lambda_circ, model);
  return sharp_rate_from(res.u_star, model.p0, model.H);
}

}  // namespace nettest
