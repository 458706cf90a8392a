#pragma once

// Seeded random generators for property tests.

#include <cstddef>
#include <random>
#include <utility>
#include <vector>

#include "wnc/conflict.hpp"
#include "wnc/io.hpp"
#include "wnc/lp.hpp"
#include "wnc/model.hpp"

namespace wnc::testing {

struct InstanceShape {
  int min_nodes = 2;
  int max_nodes = 8;
  double side = 3.0;           // nodes placed uniformly in [0, side]^2
  int max_commodities = 3;
  std::size_t max_hyperarcs = kDefaultEnumerationCap;
};

// Random radii with rho >= r, random coding nodes, and at most
// `max_commodities` random (source, sink) pairs. Draws are retried until the
// hyperarc conflict graph fits the enumeration cap.
inline Instance random_instance(std::mt19937_64& rng, const InstanceShape& shape = {}) {
  std::uniform_int_distribution<int> node_count(shape.min_nodes, shape.max_nodes);
  std::uniform_real_distribution<double> coord(0.0, shape.side);
  std::uniform_real_distribution<double> radius(0.7, 1.6);
  std::uniform_real_distribution<double> spread(1.0, 1.8);
  std::bernoulli_distribution coding(0.4);
  std::uniform_int_distribution<int> degree(2, 3);

  for (;;) {
    const int n = node_count(rng);
    std::vector<Node> nodes;
    for (int i = 0; i < n; ++i) {
      const double r = radius(rng);
      nodes.push_back({i + 1, coord(rng), coord(rng), r, r * spread(rng)});
    }
    Network net(nodes);
    std::vector<NodeId> coders;
    for (const auto& node : net.nodes())
      if (coding(rng)) coders.push_back(node.id);
    net = net.with_hyperarcs(generate_hyperarcs(net, coders, degree(rng)));
    if (net.hyperarc_count() > shape.max_hyperarcs) continue;

    Instance inst;
    inst.network = net;
    std::uniform_int_distribution<int> commodity_count(1, shape.max_commodities);
    std::uniform_int_distribution<int> pick(1, n);
    const int k = commodity_count(rng);
    for (int i = 0; i < k; ++i) {
      int s = pick(rng), t = pick(rng);
      while (t == s) t = pick(rng);
      inst.commodities.push_back({s, t});
    }
    return inst;
  }
}

// Demand on every link, each uniform in [0, scale]; some entries zeroed.
inline std::vector<double> random_demand(std::mt19937_64& rng, std::size_t links, double scale = 1.0) {
  std::uniform_real_distribution<double> value(0.0, scale);
  std::bernoulli_distribution zero(0.2);
  std::vector<double> d(links);
  for (auto& v : d) v = zero(rng) ? 0.0 : value(rng);
  return d;
}

inline std::vector<std::pair<int, int>> random_graph_edges(std::mt19937_64& rng, int n, double p) {
  std::bernoulli_distribution edge(p);
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (edge(rng)) edges.emplace_back(u, v);
  return edges;
}

// Small integer LP: <= 4 variables, <= 6 rows, coefficients in [-5, 5].
inline LinearProgram random_lp(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> vars(1, 4), rows(1, 6), coef(-5, 5), bound(-3, 10), rel(0, 5);
  LinearProgram p;
  const int n = vars(rng);
  for (int j = 0; j < n; ++j) p.objective.push_back(coef(rng));
  const int m = rows(rng);
  for (int k = 0; k < m; ++k) {
    std::vector<double> a;
    for (int j = 0; j < n; ++j) a.push_back(coef(rng));
    const int r = rel(rng);
    const Relation relation = r < 4 ? Relation::less_equal : r == 4 ? Relation::greater_equal : Relation::equal;
    p.add(a, relation, bound(rng));
  }
  return p;
}

}  // namespace wnc::testing
