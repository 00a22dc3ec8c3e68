#include "nettest/counting.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <vector>

namespace nettest {

namespace {

constexpr int kMaxGraphVertices = 500;
constexpr int kHomBruteForceGate = 200;

// Visit order for pattern vertices: start at a max-degree vertex, then
// greedily pick the vertex with the most already-ordered neighbors. For each
// position, record the mask of earlier positions it is adjacent to.
struct PatternPlan {
  std::array<int, 6> order{};
  std::array<std::uint8_t, 6> back_edges{};  // over positions, not vertex ids
  int v = 0;
};

PatternPlan plan_pattern(const Motif& h) {
  PatternPlan plan;
  plan.v = h.v;
  std::uint8_t placed = 0;
  for (int t = 0; t < h.v; ++t) {
    int best = -1, best_score = -1;
    for (int u = 0; u < h.v; ++u) {
      if (placed & (1u << u)) continue;
      int score = t == 0 ? h.degree(u)
                         : std::popcount(static_cast<unsigned>(h.rows[u] & placed));
      if (score > best_score) {
        best_score = score;
        best = u;
      }
    }
    plan.order[t] = best;
    std::uint8_t back = 0;
    for (int s = 0; s < t; ++s)
      if (h.adjacent(best, plan.order[s])) back |= static_cast<std::uint8_t>(1u << s);
    plan.back_edges[t] = back;
    placed |= static_cast<std::uint8_t>(1u << best);
  }
  return plan;
}

// Candidate buffer: one row of words per recursion level.
struct MatchScratch {
  int words;
  std::array<std::uint64_t, 8 * 6> cand{};
  std::uint64_t* level(int t) { return cand.data() + static_cast<std::size_t>(t) * words; }
};

void fill_candidates(const AdjacencyView& adj, const PatternPlan& plan,
                     const int* assigned, int t, std::uint64_t* out,
                     const std::uint64_t* used_mask) {
  const int words = adj.words_per_row();
  const std::uint8_t back = plan.back_edges[t];
  if (back == 0) {
    const int m = adj.vertex_count();
    for (int w = 0; w < words; ++w) out[w] = ~std::uint64_t{0};
    if (m & 63) out[words - 1] = (std::uint64_t{1} << (m & 63)) - 1;
  } else {
    bool first = true;
    for (int s = 0; s < t; ++s) {
      if (!(back & (1u << s))) continue;
      const std::uint64_t* row = adj.row(assigned[s]);
      if (first) {
        for (int w = 0; w < words; ++w) out[w] = row[w];
        first = false;
      } else {
        for (int w = 0; w < words; ++w) out[w] &= row[w];
      }
    }
  }
  if (used_mask)
    for (int w = 0; w < words; ++w) out[w] &= ~used_mask[w];
}

std::uint64_t count_maps(const AdjacencyView& adj, const PatternPlan& plan,
                         bool injective) {
  const int words = adj.words_per_row();
  MatchScratch scratch{words, {}};
  std::array<std::uint64_t, 8> used{};
  std::array<int, 6> assigned{};
  std::uint64_t total = 0;

  int t = 0;
  std::array<int, 6> word_pos{};
  std::array<std::uint64_t, 6> word_bits{};
  fill_candidates(adj, plan, assigned.data(), 0, scratch.level(0),
                  injective ? used.data() : nullptr);
  word_pos[0] = 0;
  word_bits[0] = scratch.level(0)[0];
  while (t >= 0) {
    // advance to the next candidate at level t
    int w = word_pos[t];
    std::uint64_t bits = word_bits[t];
    while (bits == 0 && w + 1 < words) bits = scratch.level(t)[++w];
    if (bits == 0) {
      // level exhausted; backtrack
      --t;
      if (t >= 0 && injective) {
        const int v = assigned[t];
        used[v >> 6] &= ~(std::uint64_t{1} << (v & 63));
      }
      continue;
    }
    const int bit = std::countr_zero(bits);
    bits &= bits - 1;
    word_pos[t] = w;
    word_bits[t] = bits;
    const int vertex = (w << 6) | bit;
    if (t + 1 == plan.v) {
      ++total;
      continue;
    }
    assigned[t] = vertex;
    if (injective) used[vertex >> 6] |= std::uint64_t{1} << (vertex & 63);
    ++t;
    fill_candidates(adj, plan, assigned.data(), t, scratch.level(t),
                    injective ? used.data() : nullptr);
    word_pos[t] = 0;
    word_bits[t] = scratch.level(t)[0];
  }
  return total;
}

bool is_single_edge(const Motif& h) { return h.v == 2 && h.e == 1; }

bool is_cycle(const Motif& h) {
  if (h.v < 3 || h.e != h.v) return false;
  for (int i = 0; i < h.v; ++i)
    if (h.degree(i) != 2) return false;
  return true;
}

std::uint64_t trace_power(const Graph& g, int k) {
  const int m = g.vertex_count();
  AdjacencyView adj(g);
  std::vector<std::uint64_t> a(static_cast<std::size_t>(m) * m, 0);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      a[static_cast<std::size_t>(i) * m + j] = adj.adjacent(i, j) ? 1 : 0;
  std::vector<std::uint64_t> acc = a;
  std::vector<std::uint64_t> next(a.size(), 0);
  for (int step = 1; step < k; ++step) {
    for (auto& x : next) x = 0;
    for (int i = 0; i < m; ++i) {
      const std::uint64_t* arow = acc.data() + static_cast<std::size_t>(i) * m;
      std::uint64_t* nrow = next.data() + static_cast<std::size_t>(i) * m;
      for (int l = 0; l < m; ++l) {
        const std::uint64_t ail = arow[l];
        if (!ail) continue;
        const std::uint64_t* brow = a.data() + static_cast<std::size_t>(l) * m;
        for (int j = 0; j < m; ++j) nrow[j] += ail * brow[j];
      }
    }
    acc.swap(next);
  }
  std::uint64_t trace = 0;
  for (int i = 0; i < m; ++i) trace += acc[static_cast<std::size_t>(i) * m + i];
  return trace;
}

}  // namespace

std::uint64_t injective_embeddings(const Graph& g, const Motif& h) {
  if (h.v > g.vertex_count())
    throw DomainError("motif has more vertices than the graph");
  if (g.vertex_count() > kMaxGraphVertices)
    throw SizeLimitError("counting supports graphs on at most 500 vertices");
  AdjacencyView adj(g);
  return count_maps(adj, plan_pattern(h), /*injective=*/true);
}

std::int64_t count_motif(const Graph& g, const Motif& h) {
  const std::uint64_t inj = injective_embeddings(g, h);
  if (h.aut <= 0 || inj % static_cast<std::uint64_t>(h.aut) != 0)
    throw Error("internal: embedding count not divisible by |Aut(H)|");
  return static_cast<std::int64_t>(inj / static_cast<std::uint64_t>(h.aut));
}

std::uint64_t hom_count(const Graph& g, const Motif& h) {
  if (is_single_edge(h)) return 2 * static_cast<std::uint64_t>(g.edge_count());
  if (is_cycle(h)) return trace_power(g, h.v);
  if (g.vertex_count() > kHomBruteForceGate)
    throw SizeLimitError(
        "homomorphism scan gated to 200 vertices for this motif");
  AdjacencyView adj(g);
  return count_maps(adj, plan_pattern(h), /*injective=*/false);
}

double hom_density(const Graph& g, const Motif& h) {
  const double hom = static_cast<double>(hom_count(g, h));
  return hom / std::pow(static_cast<double>(g.vertex_count()), h.v);
}

double expected_count_er(int m, double p, const Motif& h, bool exact) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("edge probability outside [0, 1]");
  double vertex_factor = 1.0;
  if (exact) {
    for (int i = 0; i < h.v; ++i) vertex_factor *= static_cast<double>(m - i);
  } else {
    vertex_factor = std::pow(static_cast<double>(m), h.v);
  }
  return vertex_factor * std::pow(p, h.e) / static_cast<double>(h.aut);
}

}  // namespace nettest
