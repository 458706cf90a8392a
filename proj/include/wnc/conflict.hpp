#pragma once

// Protocol-model conflict graphs over links (G) and hyperarcs (Ĝ), maximal
// independent set enumeration, closed neighbourhoods and the inductive
// schedulable number.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "wnc/error.hpp"
#include "wnc/model.hpp"

namespace wnc {

/// (i,j) and (i',j') conflict iff d(i',j) <= rho(i') or d(i,j') <= rho(i).
/// Boundary-equal distances conflict.
inline bool links_conflict(const Network& net, const Link& l, const Link& l2) {
  const Node& t1 = net.node(l.tail);
  const Node& t2 = net.node(l2.tail);
  return distance(t2, net.node(l.head)) <= t2.interf_radius ||
         distance(t1, net.node(l2.head)) <= t1.interf_radius;
}

/// Existential reading: two hyperarcs conflict iff some pair of their
/// sub-links conflicts.
inline bool hyperarcs_conflict(const Network& net, const Hyperarc& h, const Hyperarc& h2) {
  for (NodeId j : h.heads) {
    for (NodeId j2 : h2.heads) {
      if (links_conflict(net, Link{h.tail, j, 0}, Link{h2.tail, j2, 0})) return true;
    }
  }
  return false;
}

enum class Level { link, hyperarc };

struct ConflictVertex {
  NodeId tail = 0;
  std::vector<NodeId> heads;
  int index = 0;               // 1-based link or hyperarc index
  int weight = 1;
  std::vector<int> sub_links;  // 0-based link positions, sorted
};

/// Undirected simple graph with dense adjacency. Vertex v's record carries
/// the transmission it stands for.
class ConflictGraph {
 public:
  ConflictGraph() = default;

  ConflictGraph(std::vector<ConflictVertex> vertices, std::size_t link_count)
      : vertices_(std::move(vertices)),
        adjacency_(vertices_.size(), std::vector<std::uint8_t>(vertices_.size(), 0)),
        link_count_(link_count) {}

  /// Abstract graph on n weight-1 vertices; vertex v stands for link v.
  static ConflictGraph from_edges(std::size_t n, const std::vector<std::pair<int, int>>& edges) {
    std::vector<ConflictVertex> vs(n);
    for (std::size_t v = 0; v < n; ++v) {
      vs[v].index = static_cast<int>(v) + 1;
      vs[v].sub_links = {static_cast<int>(v)};
    }
    ConflictGraph g(std::move(vs), n);
    for (auto [u, v] : edges) g.add_edge(static_cast<std::size_t>(u), static_cast<std::size_t>(v));
    return g;
  }

  void add_edge(std::size_t u, std::size_t v) {
    if (u == v) throw ValidationError("conflict graph: self-loop");
    if (u >= size() || v >= size()) throw ValidationError("conflict graph: vertex out of range");
    adjacency_[u][v] = adjacency_[v][u] = 1;
  }

  std::size_t size() const { return vertices_.size(); }
  std::size_t link_count() const { return link_count_; }
  const std::vector<ConflictVertex>& vertices() const { return vertices_; }
  const ConflictVertex& vertex(std::size_t v) const { return vertices_[v]; }

  bool adjacent(std::size_t u, std::size_t v) const { return adjacency_[u][v] != 0; }

  std::size_t degree(std::size_t v) const {
    return static_cast<std::size_t>(std::count(adjacency_[v].begin(), adjacency_[v].end(), 1));
  }

  std::size_t edge_count() const {
    std::size_t e = 0;
    for (std::size_t v = 0; v < size(); ++v) e += degree(v);
    return e / 2;
  }

  std::vector<std::pair<int, int>> edges() const {
    std::vector<std::pair<int, int>> out;
    for (std::size_t u = 0; u < size(); ++u)
      for (std::size_t v = u + 1; v < size(); ++v)
        if (adjacent(u, v)) out.emplace_back(static_cast<int>(u), static_cast<int>(v));
    return out;
  }

  bool is_independent(const std::vector<int>& set) const {
    for (std::size_t a = 0; a < set.size(); ++a)
      for (std::size_t b = a + 1; b < set.size(); ++b)
        if (adjacent(static_cast<std::size_t>(set[a]), static_cast<std::size_t>(set[b]))) return false;
    return true;
  }

  /// Subgraph induced on weight-1 vertices (G inside Ĝ).
  ConflictGraph weight_one_subgraph() const {
    std::vector<std::size_t> keep;
    for (std::size_t v = 0; v < size(); ++v)
      if (vertices_[v].weight == 1) keep.push_back(v);
    std::vector<ConflictVertex> vs;
    for (auto v : keep) vs.push_back(vertices_[v]);
    ConflictGraph g(std::move(vs), link_count_);
    for (std::size_t a = 0; a < keep.size(); ++a)
      for (std::size_t b = a + 1; b < keep.size(); ++b)
        if (adjacent(keep[a], keep[b])) g.add_edge(a, b);
    return g;
  }

 private:
  std::vector<ConflictVertex> vertices_;
  std::vector<std::vector<std::uint8_t>> adjacency_;
  std::size_t link_count_ = 0;
};

inline ConflictGraph build_conflict_graph(const Network& net, Level level) {
  std::vector<ConflictVertex> vs;
  std::vector<Hyperarc> arcs;
  if (level == Level::link) {
    for (const auto& l : net.links()) arcs.push_back({l.tail, {l.head}, l.index});
  } else {
    arcs = net.hyperarcs();
  }
  for (std::size_t p = 0; p < arcs.size(); ++p) {
    const auto& h = arcs[p];
    vs.push_back({h.tail, h.heads, h.index, h.weight(), net.sub_link_positions(p)});
  }
  ConflictGraph g(std::move(vs), net.link_count());
  for (std::size_t u = 0; u < arcs.size(); ++u)
    for (std::size_t v = u + 1; v < arcs.size(); ++v)
      if (hyperarcs_conflict(net, arcs[u], arcs[v])) g.add_edge(u, v);
  return g;
}

inline constexpr int kDefaultEnumerationCap = 24;
inline constexpr int kMaxEnumerationCap = 64;

/// Maximal independent sets of a conflict graph (𝓘̂ up to downward closure)
/// and their sub-link sets (𝓛). Entry k of both vectors belongs together.
struct SchedulableSetCatalog {
  std::vector<std::vector<int>> hyperarc_sets;  // 0-based vertex positions, sorted
  std::vector<std::vector<int>> sublink_sets;   // 0-based link positions, sorted
  std::size_t link_count = 0;

  std::size_t size() const { return hyperarc_sets.size(); }

  std::vector<std::uint8_t> incidence(std::size_t k) const {
    std::vector<std::uint8_t> v(link_count, 0);
    for (int a : sublink_sets[k]) v[static_cast<std::size_t>(a)] = 1;
    return v;
  }
};

namespace detail {

using Mask = std::uint64_t;

// Bron-Kerbosch with Tomita pivoting over the complement graph: maximal
// cliques of the complement are the maximal independent sets.
inline void bron_kerbosch(const std::vector<Mask>& compat, Mask r, Mask p, Mask x,
                          std::vector<Mask>& out) {
  if (p == 0) {
    if (x == 0) out.push_back(r);
    return;
  }
  Mask px = p | x;
  int pivot = std::countr_zero(px);
  int best = -1;
  for (Mask m = px; m; m &= m - 1) {
    int u = std::countr_zero(m);
    int c = std::popcount(p & compat[static_cast<std::size_t>(u)]);
    if (c > best) {
      best = c;
      pivot = u;
    }
  }
  for (Mask m = p & ~compat[static_cast<std::size_t>(pivot)]; m; m &= m - 1) {
    int v = std::countr_zero(m);
    Mask bit = Mask{1} << v;
    bron_kerbosch(compat, r | bit, p & compat[static_cast<std::size_t>(v)],
                  x & compat[static_cast<std::size_t>(v)], out);
    p &= ~bit;
    x |= bit;
  }
}

}  // namespace detail

inline SchedulableSetCatalog enumerate_schedulable_sets(const ConflictGraph& g,
                                                        int cap = kDefaultEnumerationCap) {
  if (cap > kMaxEnumerationCap)
    throw ValidationError("enumeration cap must be at most " + std::to_string(kMaxEnumerationCap));
  const std::size_t n = g.size();
  if (n > static_cast<std::size_t>(cap)) {
    throw EnumerationError("instance too large for exact enumeration (" + std::to_string(n) +
                           " conflict vertices, cap " + std::to_string(cap) +
                           "); use the CFS scheduler instead");
  }
  std::vector<detail::Mask> compat(n, 0);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v)
      if (u != v && !g.adjacent(u, v)) compat[u] |= detail::Mask{1} << v;

  const detail::Mask all = n == 64 ? ~detail::Mask{0} : (detail::Mask{1} << n) - 1;
  std::vector<detail::Mask> found;
  detail::bron_kerbosch(compat, 0, all, 0, found);

  SchedulableSetCatalog cat;
  cat.link_count = g.link_count();
  for (auto mask : found) {
    std::vector<int> set;
    for (detail::Mask m = mask; m; m &= m - 1) set.push_back(std::countr_zero(m));
    cat.hyperarc_sets.push_back(std::move(set));
  }
  std::sort(cat.hyperarc_sets.begin(), cat.hyperarc_sets.end());
  for (const auto& set : cat.hyperarc_sets) {
    std::vector<int> links;
    for (int v : set) {
      const auto& subs = g.vertex(static_cast<std::size_t>(v)).sub_links;
      links.insert(links.end(), subs.begin(), subs.end());
    }
    std::sort(links.begin(), links.end());
    links.erase(std::unique(links.begin(), links.end()), links.end());
    cat.sublink_sets.push_back(std::move(links));
  }
  return cat;
}

/// V_1..V_n over link positions, plus Δ = max |V_i| - 1.
struct Neighborhoods {
  std::vector<std::vector<int>> sets;
  int max_degree = 0;
};

inline Neighborhoods closed_neighborhoods(const ConflictGraph& g) {
  Neighborhoods nb;
  for (std::size_t v = 0; v < g.size(); ++v) {
    if (g.vertex(v).weight != 1)
      throw ValidationError("closed_neighborhoods expects the link-level conflict graph");
    std::vector<int> set;
    for (std::size_t u = 0; u < g.size(); ++u)
      if (u == v || g.adjacent(u, v)) set.push_back(g.vertex(u).sub_links.front());
    std::sort(set.begin(), set.end());
    nb.max_degree = std::max(nb.max_degree, static_cast<int>(set.size()) - 1);
    nb.sets.push_back(std::move(set));
  }
  return nb;
}

/// α* = max over i and L in 𝓛 of |L ∩ V_i|.
inline int alpha_star(const SchedulableSetCatalog& catalog, const Neighborhoods& nb) {
  if (catalog.size() == 0) throw ValidationError("alpha_star: empty catalog");
  int best = 0;
  std::vector<int> common;
  for (const auto& vi : nb.sets) {
    for (const auto& l : catalog.sublink_sets) {
      common.clear();
      std::set_intersection(vi.begin(), vi.end(), l.begin(), l.end(), std::back_inserter(common));
      best = std::max(best, static_cast<int>(common.size()));
    }
  }
  return best;
}

}  // namespace wnc
