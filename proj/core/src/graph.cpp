#include "nettest/graph.hpp"

#include <bit>
#include <string>

namespace nettest {

std::size_t edge_index(int i, int j, int m) {
  if (i < 0 || i >= j || j >= m) {
    throw InvalidPairError("invalid vertex pair (" + std::to_string(i) + ", " +
                           std::to_string(j) + ") on " + std::to_string(m) +
                           " vertices");
  }
  // sum_{a<i} (m-1-a) + (j-i-1)
  const std::size_t base =
      static_cast<std::size_t>(i) * (2 * m - i - 1) / 2;
  return base + static_cast<std::size_t>(j - i - 1);
}

Graph::Graph(int m) : m_(m), bits_((pair_count(m) + 63) / 64, 0) {
  if (m <= 0) throw DomainError("graph needs at least one vertex");
}

Graph Graph::complete(int m) {
  Graph g(m);
  for (std::size_t k = 0; k < g.slot_count(); ++k) g.set_slot(k, true);
  return g;
}

bool Graph::has_edge(int i, int j) const {
  if (i > j) std::swap(i, j);
  return test_slot(edge_index(i, j, m_));
}

void Graph::set_edge(int i, int j, bool present) {
  if (i > j) std::swap(i, j);
  set_slot(edge_index(i, j, m_), present);
}

std::int64_t Graph::edge_count() const {
  std::int64_t total = 0;
  const std::size_t slots = slot_count();
  for (std::size_t w = 0; w < bits_.size(); ++w) {
    std::uint64_t word = bits_[w];
    // Mask tail bits beyond the last slot in the final word.
    if (w + 1 == bits_.size() && (slots & 63) != 0)
      word &= (std::uint64_t{1} << (slots & 63)) - 1;
    total += std::popcount(word);
  }
  return total;
}

std::vector<std::pair<int, int>> Graph::edge_list() const {
  std::vector<std::pair<int, int>> edges;
  edges.reserve(static_cast<std::size_t>(edge_count()));
  std::size_t k = 0;
  for (int i = 0; i < m_; ++i)
    for (int j = i + 1; j < m_; ++j, ++k)
      if (test_slot(k)) edges.emplace_back(i, j);
  return edges;
}

AdjacencyView::AdjacencyView(const Graph& g)
    : m_(g.vertex_count()),
      words_((g.vertex_count() + 63) / 64),
      rows_(static_cast<std::size_t>(g.vertex_count()) * words_, 0),
      degrees_(g.vertex_count(), 0) {
  std::size_t k = 0;
  for (int i = 0; i < m_; ++i) {
    for (int j = i + 1; j < m_; ++j, ++k) {
      if (!g.test_slot(k)) continue;
      rows_[static_cast<std::size_t>(i) * words_ + (j >> 6)] |=
          std::uint64_t{1} << (j & 63);
      rows_[static_cast<std::size_t>(j) * words_ + (i >> 6)] |=
          std::uint64_t{1} << (i & 63);
      ++degrees_[i];
      ++degrees_[j];
    }
  }
}

std::int64_t AdjacencyView::common_neighbors(int a, int b) const {
  const std::uint64_t* ra = row(a);
  const std::uint64_t* rb = row(b);
  std::int64_t total = 0;
  for (int w = 0; w < words_; ++w) total += std::popcount(ra[w] & rb[w]);
  // No self-loops, so neither endpoint appears in the intersection.
  return total;
}

}  // namespace nettest
