#ifndef NETTEST_COUNTING_HPP
#define NETTEST_COUNTING_HPP

#include <cstdint>

#include "nettest/graph.hpp"
#include "nettest/motif.hpp"

namespace nettest {

// Injective edge-preserving maps V(H) -> V(G), counted by backtracking.
std::uint64_t injective_embeddings(const Graph& g, const Motif& h);

// Unlabelled copies of H in G: injective embeddings divided by |Aut(H)|.
// The division is exact; requires v(H) <= v(G) and v(G) <= 500.
std::int64_t count_motif(const Graph& g, const Motif& h);

// Homomorphisms V(H) -> V(G). Edges and cycles use adjacency-power traces;
// everything else falls back to a pruned scan over all maps, gated to
// v(G) <= 200.
std::uint64_t hom_count(const Graph& g, const Motif& h);

// Homomorphism density t(H, G) = hom(H, G) / v(G)^{v(H)}.
double hom_density(const Graph& g, const Motif& h);

// Expected unlabelled H-count in G(m, p). Exact mode uses the falling
// factorial (m)_{v(H)}; asymptotic mode uses m^{v(H)}.
double expected_count_er(int m, double p, const Motif& h, bool exact);

}  // namespace nettest

#endif
