#ifndef NETTEST_MOTIF_HPP
#define NETTEST_MOTIF_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "nettest/errors.hpp"

namespace nettest {

// A small pattern graph together with the combinatorial profile the test
// statistics depend on: vertex/edge counts, automorphism count, and the
// maximum subgraph density k(H) kept as an exact rational.
struct Motif {
  std::string name;
  int v = 0;
  int e = 0;
  std::vector<std::uint8_t> rows;  // adjacency bitmasks, one byte per vertex
  std::int64_t aut = 1;
  int k_num = 0;
  int k_den = 1;
  bool balanced = false;
  bool strictly_balanced = false;

  double k() const { return static_cast<double>(k_num) / k_den; }
  bool adjacent(int i, int j) const { return (rows[i] >> j) & 1u; }
  int degree(int i) const;
  std::vector<std::pair<int, int>> edge_list() const;
};

struct BalanceProfile {
  int k_num = 0;
  int k_den = 1;
  bool balanced = false;
  bool strictly_balanced = false;
};

// Number of adjacency-preserving vertex permutations, by exhaustive check.
// Accepts patterns on up to 8 vertices.
std::int64_t aut_count(const std::vector<std::uint8_t>& rows);

// k(H) and the (strict) balance classification over all vertex subsets with
// at least one induced edge. Works for any pattern, connected or not.
BalanceProfile balance_profile(const std::vector<std::uint8_t>& rows);

// Build the full motif profile from an edge list on vertices 0..v-1.
// Requires a connected pattern with 1 <= e and v <= 6.
Motif motif_profile(int v, const std::vector<std::pair<int, int>>& edges,
                    std::string name = "");

// Registered motifs.
const Motif& edge_motif();
const Motif& path2_motif();
const Motif& triangle_motif();
const Motif& c4_motif();
const Motif& c5_motif();
const Motif& k4_motif();
const std::vector<Motif>& motif_registry();
const Motif& motif_by_name(const std::string& name);

}  // namespace nettest

#endif
