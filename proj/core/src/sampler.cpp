#include "nettest/sampler.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "nettest/counting.hpp"

namespace nettest {

ErModel make_er(int m, double p) {
  if (m < 1) throw DomainError("vertex count must be positive");
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("edge probability outside [0, 1]");
  return ErModel{m, p};
}

ErgmModel make_ergm(int m, std::vector<ErgmTerm> terms) {
  if (m < 1) throw DomainError("vertex count must be positive");
  if (terms.empty()) throw DomainError("ERGM needs at least the edge term");
  const Motif& t1 = terms.front().motif;
  if (!(t1.v == 2 && t1.e == 1))
    throw DomainError("the first ERGM term must be the single edge");
  ErgmModel model;
  model.m = m;
  model.terms = std::move(terms);
  model.ferromagnetic = true;
  for (std::size_t k = 1; k < model.terms.size(); ++k) {
    if (model.terms[k].motif.e < 2)
      throw DomainError("higher ERGM terms need at least two edges");
    if (!(model.terms[k].beta > 0.0)) model.ferromagnetic = false;
  }
  return model;
}

double ergm_field(const ErgmModel& model, double a) {
  double total = 0.0;
  for (const ErgmTerm& term : model.terms) {
    const int e = term.motif.e;
    if (e == 1)
      total += term.beta;
    else
      total += term.beta * e * std::pow(a, e - 1);
  }
  return total;
}

double fixed_point_map(const ErgmModel& model, double a) {
  const double field = 2.0 * ergm_field(model, a);
  return 1.0 / (1.0 + std::exp(-field));
}

namespace {

// d/da phi(a) = 2 Phi'(a) phi (1 - phi)
double fixed_point_map_derivative(const ErgmModel& model, double a) {
  double field_prime = 0.0;
  for (const ErgmTerm& term : model.terms) {
    const int e = term.motif.e;
    if (e >= 2)
      field_prime += term.beta * e * (e - 1) * std::pow(a, e - 2);
  }
  const double s = fixed_point_map(model, a);
  return 2.0 * field_prime * s * (1.0 - s);
}

double p_star_or_default(const SubcriticalReport& report) {
  return report.is_subcritical ? report.fixed_points.front() : 0.5;
}

}  // namespace

double SubcriticalReport::p_star() const {
  if (!is_subcritical)
    throw UnsupportedRegimeError("model is not subcritical; no unique fixed point");
  return fixed_points.front();
}

SubcriticalReport subcritical_check(const ErgmModel& model) {
  if (!model.ferromagnetic)
    throw UnsupportedRegimeError(
        "subcritical analysis requires a ferromagnetic model (beta_k > 0 for k >= 2)");
  constexpr int kGridPoints = 10000;
  SubcriticalReport report;
  auto residual = [&](double u) { return fixed_point_map(model, u) - u; };
  double prev_u = 0.0;
  double prev_f = residual(prev_u);
  for (int i = 1; i <= kGridPoints; ++i) {
    const double u = static_cast<double>(i) / kGridPoints;
    const double f = residual(u);
    if (prev_f == 0.0 || (prev_f > 0.0) != (f > 0.0)) {
      double lo = prev_u, hi = u, flo = prev_f;
      if (flo == 0.0) {
        hi = lo;
      } else {
        while (hi - lo > 1e-12) {
          const double mid = 0.5 * (lo + hi);
          const double fm = residual(mid);
          if (fm == 0.0) {
            lo = hi = mid;
            break;
          }
          if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
          } else {
            hi = mid;
          }
        }
      }
      const double root = 0.5 * (lo + hi);
      if (root > 0.0 && root < 1.0 &&
          (report.fixed_points.empty() ||
           root - report.fixed_points.back() > 1e-9)) {
        report.fixed_points.push_back(root);
        report.derivatives.push_back(fixed_point_map_derivative(model, root));
      }
    }
    prev_u = u;
    prev_f = f;
  }
  report.is_subcritical =
      report.fixed_points.size() == 1 && report.derivatives.front() < 1.0;
  return report;
}

Graph sample_er(const ErModel& model, RngStream& rng) {
  Graph g(model.m);
  const std::size_t slots = g.slot_count();
  for (std::size_t k = 0; k < slots; ++k)
    if (rng.bernoulli(model.p)) g.set_slot(k, true);
  return g;
}

double ergm_hamiltonian(const Graph& g, const ErgmModel& model) {
  const double m = static_cast<double>(g.vertex_count());
  double total = 0.0;
  for (const ErgmTerm& term : model.terms) {
    const double hom = static_cast<double>(hom_count(g, term.motif));
    total += term.beta * hom / std::pow(m, term.motif.v - 2);
  }
  return total;
}

namespace {

enum class TermKind { Edge, Triangle, Path2, Generic };

TermKind classify_term(const Motif& t) {
  if (t.v == 2 && t.e == 1) return TermKind::Edge;
  if (t.v == 3 && t.e == 3) return TermKind::Triangle;
  if (t.v == 3 && t.e == 2) return TermKind::Path2;
  return TermKind::Generic;
}

// Glauber chain state: graph plus adjacency rows and degrees kept in sync.
struct ChainState {
  Graph g;
  int m;
  int words;
  std::vector<std::uint64_t> rows;
  std::vector<int> degrees;

  explicit ChainState(const Graph& init)
      : g(init),
        m(init.vertex_count()),
        words((init.vertex_count() + 63) / 64),
        rows(static_cast<std::size_t>(init.vertex_count()) * words, 0),
        degrees(init.vertex_count(), 0) {
    for (auto [i, j] : init.edge_list()) link(i, j, true);
  }

  void link(int i, int j, bool present) {
    const std::uint64_t bi = std::uint64_t{1} << (i & 63);
    const std::uint64_t bj = std::uint64_t{1} << (j & 63);
    if (present) {
      rows[static_cast<std::size_t>(i) * words + (j >> 6)] |= bj;
      rows[static_cast<std::size_t>(j) * words + (i >> 6)] |= bi;
      degrees[i] += 1;
      degrees[j] += 1;
    } else {
      rows[static_cast<std::size_t>(i) * words + (j >> 6)] &= ~bj;
      rows[static_cast<std::size_t>(j) * words + (i >> 6)] &= ~bi;
      degrees[i] -= 1;
      degrees[j] -= 1;
    }
  }

  bool has(int i, int j) const {
    return (rows[static_cast<std::size_t>(i) * words + (j >> 6)] >> (j & 63)) & 1u;
  }

  std::int64_t common_neighbors(int i, int j) const {
    const std::uint64_t* ri = rows.data() + static_cast<std::size_t>(i) * words;
    const std::uint64_t* rj = rows.data() + static_cast<std::size_t>(j) * words;
    std::int64_t total = 0;
    for (int w = 0; w < words; ++w) total += std::popcount(ri[w] & rj[w]);
    return total;
  }

  void set(int i, int j, bool present, std::size_t slot) {
    const bool cur = g.test_slot(slot);
    if (cur == present) return;
    g.set_slot(slot, present);
    link(i, j, present);
  }

  // H(edge on) - H(edge off) for pair (i, j); degrees are taken with the
  // (i, j) edge excluded so the formula is state-independent.
  double delta(const ErgmModel& model, int i, int j) {
    const bool present = has(i, j);
    double total = 0.0;
    for (const ErgmTerm& term : model.terms) {
      switch (classify_term(term.motif)) {
        case TermKind::Edge:
          total += 2.0 * term.beta;
          break;
        case TermKind::Triangle:
          total += 6.0 * term.beta * static_cast<double>(common_neighbors(i, j)) / m;
          break;
        case TermKind::Path2: {
          const int di = degrees[i] - (present ? 1 : 0);
          const int dj = degrees[j] - (present ? 1 : 0);
          total += term.beta * (2.0 * di + 2.0 * dj + 2.0) / m;
          break;
        }
        case TermKind::Generic: {
          // full recount on a scratch copy of the graph
          Graph scratch = g;
          scratch.set_edge(i, j, true);
          const double on = static_cast<double>(hom_count(scratch, term.motif));
          scratch.set_edge(i, j, false);
          const double off = static_cast<double>(hom_count(scratch, term.motif));
          total += term.beta * (on - off) / std::pow(static_cast<double>(m),
                                                     term.motif.v - 2);
          break;
        }
      }
    }
    return total;
  }

  void sweep(const ErgmModel& model, RngStream& rng) {
    std::size_t slot = 0;
    for (int i = 0; i < m; ++i) {
      for (int j = i + 1; j < m; ++j, ++slot) {
        const double dh = delta(model, i, j);
        // P(edge present | rest) = exp(dH) / (1 + exp(dH))
        const double p_on = 1.0 / (1.0 + std::exp(-dh));
        set(i, j, rng.bernoulli(p_on), slot);
      }
    }
  }
};

}  // namespace

double hamiltonian_delta(const Graph& g, const ErgmModel& model, int i, int j) {
  if (i > j) std::swap(i, j);
  if (i < 0 || i == j || j >= g.vertex_count())
    throw InvalidPairError("invalid vertex pair for Hamiltonian delta");
  ChainState state(g);
  return state.delta(model, i, j);
}

std::vector<Graph> sample_ergm(const ErgmModel& model,
                               const SamplerConfig& config, int n) {
  if (n < 0) throw DomainError("sample count must be nonnegative");
  if (config.burn_in < 0 || config.thin < 1)
    throw DomainError("burn_in must be >= 0 and thin >= 1");
  const SubcriticalReport report = subcritical_check(model);
  if (!report.is_subcritical && !config.force_non_subcritical)
    throw NotSubcriticalError(
        "model is not subcritical (" +
            std::to_string(report.fixed_points.size()) +
            " fixed points); pass the override to sample anyway",
        report);

  RngStream rng(config.seed, config.stream);
  const double p0 = p_star_or_default(report);
  ChainState state(sample_er(ErModel{model.m, p0}, rng));

  for (int s = 0; s < config.burn_in; ++s) state.sweep(model, rng);

  std::vector<Graph> samples;
  samples.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    for (int s = 0; s < config.thin; ++s) state.sweep(model, rng);
    samples.push_back(state.g);
  }
  return samples;
}

}  // namespace nettest
