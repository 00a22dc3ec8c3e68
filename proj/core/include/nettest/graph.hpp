#ifndef NETTEST_GRAPH_HPP
#define NETTEST_GRAPH_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "nettest/errors.hpp"

namespace nettest {

// Index of the unordered pair (i, j), i < j, under the lexicographic order
// (0,1), (0,2), ..., (0,m-1), (1,2), ...  This order fixes the edge-bit
// layout and hence the serialization format.
std::size_t edge_index(int i, int j, int m);

// Number of vertex pairs on m vertices.
inline std::size_t pair_count(int m) {
  return static_cast<std::size_t>(m) * (m - 1) / 2;
}

// Simple undirected graph on a fixed vertex set, stored as a bit vector over
// vertex pairs in edge_index order.
class Graph {
 public:
  explicit Graph(int m);

  static Graph complete(int m);

  int vertex_count() const { return m_; }
  std::size_t slot_count() const { return pair_count(m_); }

  bool has_edge(int i, int j) const;
  void set_edge(int i, int j, bool present);

  // Unchecked access by edge slot; used by samplers and serialization.
  bool test_slot(std::size_t k) const {
    return (bits_[k >> 6] >> (k & 63)) & 1u;
  }
  void set_slot(std::size_t k, bool present) {
    if (present)
      bits_[k >> 6] |= std::uint64_t{1} << (k & 63);
    else
      bits_[k >> 6] &= ~(std::uint64_t{1} << (k & 63));
  }

  std::int64_t edge_count() const;
  std::vector<std::pair<int, int>> edge_list() const;

  bool operator==(const Graph&) const = default;

 private:
  int m_;
  std::vector<std::uint64_t> bits_;
};

// Row-bitmask adjacency built once per graph; counting kernels consume
// neighbor sets as 64-bit words.
class AdjacencyView {
 public:
  explicit AdjacencyView(const Graph& g);

  int vertex_count() const { return m_; }
  int words_per_row() const { return words_; }
  const std::uint64_t* row(int v) const { return rows_.data() + static_cast<std::size_t>(v) * words_; }
  int degree(int v) const { return degrees_[v]; }
  bool adjacent(int a, int b) const {
    return (row(a)[b >> 6] >> (b & 63)) & 1u;
  }
  std::int64_t common_neighbors(int a, int b) const;

 private:
  int m_;
  int words_;
  std::vector<std::uint64_t> rows_;
  std::vector<int> degrees_;
};

}  // namespace nettest

#endif
