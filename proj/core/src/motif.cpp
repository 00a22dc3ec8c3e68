#include "nettest/motif.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

namespace nettest {

namespace {

int popcount8(std::uint8_t x) { return std::popcount(static_cast<unsigned>(x)); }

int edge_count_of(const std::vector<std::uint8_t>& rows) {
  int twice = 0;
  for (std::uint8_t r : rows) twice += popcount8(r);
  return twice / 2;
}

bool is_connected(const std::vector<std::uint8_t>& rows) {
  const int v = static_cast<int>(rows.size());
  if (v == 0) return false;
  std::uint8_t seen = 1;
  std::uint8_t frontier = 1;
  while (frontier) {
    std::uint8_t next = 0;
    for (int i = 0; i < v; ++i)
      if (frontier & (1u << i)) next |= rows[i];
    frontier = next & static_cast<std::uint8_t>(~seen);
    seen |= next;
  }
  return popcount8(seen & ((1u << v) - 1)) == v;
}

// a/b < c/d for positive denominators
bool rational_less(int a, int b, int c, int d) {
  return static_cast<long long>(a) * d < static_cast<long long>(c) * b;
}

}  // namespace

int Motif::degree(int i) const { return popcount8(rows[i]); }

std::vector<std::pair<int, int>> Motif::edge_list() const {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < v; ++i)
    for (int j = i + 1; j < v; ++j)
      if (adjacent(i, j)) edges.emplace_back(i, j);
  return edges;
}

std::int64_t aut_count(const std::vector<std::uint8_t>& rows) {
  const int v = static_cast<int>(rows.size());
  if (v < 1) throw DomainError("empty pattern has no automorphism group here");
  if (v > 8) throw SizeLimitError("aut_count supports at most 8 vertices");
  std::vector<int> perm(v);
  std::iota(perm.begin(), perm.end(), 0);
  std::int64_t count = 0;
  do {
    bool ok = true;
    for (int i = 0; i < v && ok; ++i) {
      for (int j = i + 1; j < v && ok; ++j) {
        const bool a = (rows[i] >> j) & 1u;
        const bool b = (rows[perm[i]] >> perm[j]) & 1u;
        if (a != b) ok = false;
      }
    }
    if (ok) ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return count;
}

BalanceProfile balance_profile(const std::vector<std::uint8_t>& rows) {
  const int v = static_cast<int>(rows.size());
  if (v > 8) throw SizeLimitError("balance_profile supports at most 8 vertices");
  const int e_full = edge_count_of(rows);
  if (e_full < 1) throw UnsupportedMotifError("pattern has no edges");

  BalanceProfile out;
  out.k_num = 0;
  out.k_den = 1;
  bool strictly = true;
  for (unsigned mask = 1; mask < (1u << v); ++mask) {
    int size = popcount8(static_cast<std::uint8_t>(mask));
    int edges = 0;
    for (int i = 0; i < v; ++i)
      if (mask & (1u << i)) edges += popcount8(rows[i] & static_cast<std::uint8_t>(mask));
    edges /= 2;
    if (edges < 1) continue;
    if (rational_less(out.k_num, out.k_den, edges, size)) {
      out.k_num = edges;
      out.k_den = size;
    }
    // every proper induced subset must be strictly less dense than H
    if (size < v && !rational_less(edges, size, e_full, v)) strictly = false;
  }
  const int g = std::gcd(out.k_num, out.k_den);
  out.k_num /= g;
  out.k_den /= g;
  // balanced: densest subgraph no denser than H itself
  out.balanced = static_cast<long long>(out.k_num) * v ==
                 static_cast<long long>(e_full) * out.k_den;
  out.strictly_balanced = out.balanced && strictly;
  return out;
}

Motif motif_profile(int v, const std::vector<std::pair<int, int>>& edges,
                    std::string name) {
  if (v < 1) throw UnsupportedMotifError("empty pattern");
  if (v > 6) throw SizeLimitError("motifs support at most 6 vertices");
  if (edges.empty()) throw UnsupportedMotifError("pattern has no edges");
  std::vector<std::uint8_t> rows(v, 0);
  for (auto [i, j] : edges) {
    if (i < 0 || j < 0 || i >= v || j >= v || i == j)
      throw InvalidPairError("invalid motif edge (" + std::to_string(i) + ", " +
                             std::to_string(j) + ")");
    rows[i] |= static_cast<std::uint8_t>(1u << j);
    rows[j] |= static_cast<std::uint8_t>(1u << i);
  }
  if (!is_connected(rows))
    throw UnsupportedMotifError("disconnected pattern");

  Motif m;
  m.name = std::move(name);
  m.v = v;
  m.e = edge_count_of(rows);
  m.rows = std::move(rows);
  m.aut = aut_count(m.rows);
  const BalanceProfile bp = balance_profile(m.rows);
  m.k_num = bp.k_num;
  m.k_den = bp.k_den;
  m.balanced = bp.balanced;
  m.strictly_balanced = bp.strictly_balanced;
  return m;
}

namespace {

Motif make_cycle(int v, std::string name) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < v; ++i) edges.emplace_back(std::min(i, (i + 1) % v), std::max(i, (i + 1) % v));
  return motif_profile(v, edges, std::move(name));
}

Motif make_clique(int v, std::string name) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < v; ++i)
    for (int j = i + 1; j < v; ++j) edges.emplace_back(i, j);
  return motif_profile(v, edges, std::move(name));
}

}  // namespace

const Motif& edge_motif() {
  static const Motif m = motif_profile(2, {{0, 1}}, "edge");
  return m;
}

const Motif& path2_motif() {
  static const Motif m = motif_profile(3, {{0, 1}, {1, 2}}, "path2");
  return m;
}

const Motif& triangle_motif() {
  static const Motif m = make_clique(3, "triangle");
  return m;
}

const Motif& c4_motif() {
  static const Motif m = make_cycle(4, "c4");
  return m;
}

const Motif& c5_motif() {
  static const Motif m = make_cycle(5, "c5");
  return m;
}

const Motif& k4_motif() {
  static const Motif m = make_clique(4, "k4");
  return m;
}

const std::vector<Motif>& motif_registry() {
  static const std::vector<Motif> all = {edge_motif(),     path2_motif(),
                                         triangle_motif(), c4_motif(),
                                         c5_motif(),       k4_motif()};
  return all;
}

const Motif& motif_by_name(const std::string& name) {
  for (const Motif& m : motif_registry())
    if (m.name == name) return m;
  throw UnsupportedMotifError(
      "unknown motif '" + name +
      "' (registered: edge, path2, triangle, c4, c5, k4)");
}

}  // namespace nettest
