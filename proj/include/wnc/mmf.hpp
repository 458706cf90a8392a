#pragma once

// Maximum multiflow with and without coding, schedulable-polytope membership
// and optimal fractional schedules over a schedulable-set catalog.
//
// Capacity is modelled by the downward-closed relaxation
//   sum_L lambda_L * incidence(L) >= demand,  sum_L lambda_L <= 1,
// which describes the same demand region as the convex hull because subsets
// of schedulable sets are schedulable. Only maximal sets are needed.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wnc/conflict.hpp"
#include "wnc/error.hpp"
#include "wnc/lp.hpp"
#include "wnc/model.hpp"

namespace wnc {

enum class Mode { plain, coding };

inline const char* to_string(Mode m) { return m == Mode::plain ? "plain" : "coding"; }

struct Commodity {
  NodeId source = 0;
  NodeId sink = 0;
};

/// val(f) = f(out(s)) - f(in(s)).
inline double flow_value(const Network& net, std::span<const double> flow, NodeId source) {
  if (flow.size() != net.link_count())
    throw ValidationError("flow vector length does not match the link count");
  double v = 0.0;
  for (const auto& l : net.links()) {
    const double f = flow[static_cast<std::size_t>(l.index - 1)];
    if (l.tail == source) v += f;
    if (l.head == source) v -= f;
  }
  return v;
}

/// Largest |inflow - outflow| over nodes other than source and sink.
inline double conservation_error(const Network& net, std::span<const double> flow,
                                 const Commodity& c) {
  double worst = 0.0;
  for (const auto& n : net.nodes()) {
    if (n.id == c.source || n.id == c.sink) continue;
    double balance = 0.0;
    for (const auto& l : net.links()) {
      const double f = flow[static_cast<std::size_t>(l.index - 1)];
      if (l.head == n.id) balance += f;
      if (l.tail == n.id) balance -= f;
    }
    worst = std::max(worst, std::abs(balance));
  }
  return worst;
}

inline void validate_demand(std::span<const double> d, std::size_t link_count) {
  if (d.size() != link_count)
    throw ValidationError("demand has " + std::to_string(d.size()) + " entries, expected " +
                          std::to_string(link_count));
  for (double v : d)
    if (!std::isfinite(v) || v < 0.0) throw ValidationError("demand entries must be finite and >= 0");
}

/// A weighted set of links; `links` holds 0-based link positions.
struct ScheduleEntry {
  std::vector<int> links;
  double lambda = 0.0;
};

/// c(a) = sum of lambda over entries containing a.
inline std::vector<double> link_capacity_function(std::span<const ScheduleEntry> schedule,
                                                  std::size_t link_count) {
  std::vector<double> c(link_count, 0.0);
  for (const auto& e : schedule) {
    for (int a : e.links) {
      if (a < 0 || static_cast<std::size_t>(a) >= link_count)
        throw ValidationError("schedule references link outside the index space");
      c[static_cast<std::size_t>(a)] += e.lambda;
    }
  }
  return c;
}

/// lambda per catalog set; `set` indexes SchedulableSetCatalog entries.
struct CatalogWeight {
  std::size_t set = 0;
  double lambda = 0.0;
};

inline std::vector<ScheduleEntry> expand(const SchedulableSetCatalog& cat,
                                         std::span<const CatalogWeight> weights) {
  std::vector<ScheduleEntry> out;
  for (const auto& w : weights) out.push_back({cat.sublink_sets.at(w.set), w.lambda});
  return out;
}

struct MmfSolution {
  Mode mode = Mode::plain;
  double throughput = 0.0;
  std::vector<Commodity> commodities;
  std::vector<double> commodity_values;
  std::vector<std::vector<double>> flows;  // [commodity][link position]
  SchedulableSetCatalog catalog;
  std::vector<CatalogWeight> schedule;     // lambda > 0 only
  std::vector<double> bandwidth;           // per link; 1 when not given

  double schedule_length() const {
    double s = 0.0;
    for (const auto& w : schedule) s += w.lambda;
    return s;
  }
};

struct MmfOptions {
  std::optional<std::vector<double>> bandwidth;
  int enumeration_cap = kDefaultEnumerationCap;
};

inline SchedulableSetCatalog catalog_for(const Network& net, Mode mode, int cap) {
  return enumerate_schedulable_sets(
      build_conflict_graph(net, mode == Mode::plain ? Level::link : Level::hyperarc), cap);
}

namespace detail {

inline constexpr double kLambdaFloor = 1e-12;

inline std::vector<CatalogWeight> positive_weights(std::span<const double> x, std::size_t offset,
                                                   std::size_t count) {
  std::vector<CatalogWeight> out;
  for (std::size_t k = 0; k < count; ++k)
    if (x[offset + k] > kLambdaFloor) out.push_back({k, x[offset + k]});
  return out;
}

}  // namespace detail

/// Multiflow LP over `cat`: maximize total source out-flow subject to
/// conservation, per-link capacity and sum of lambda <= 1.
inline LinearProgram multiflow_lp(const Network& net, std::span<const Commodity> commodities,
                                  const SchedulableSetCatalog& cat, std::span<const double> bandwidth) {
  const std::size_t n = net.link_count();
  const std::size_t k = commodities.size();
  const std::size_t sets = cat.size();
  const std::size_t flow_vars = k * n;
  const std::size_t vars = flow_vars + sets;
  auto fvar = [n](std::size_t i, std::size_t a) { return i * n + a; };

  LinearProgram lp;
  lp.objective.assign(vars, 0.0);
  for (std::size_t i = 0; i < k; ++i) {
    for (const auto& l : net.links()) {
      const auto a = static_cast<std::size_t>(l.index - 1);
      if (l.tail == commodities[i].source) lp.objective[fvar(i, a)] += 1.0;
      if (l.head == commodities[i].source) lp.objective[fvar(i, a)] -= 1.0;
    }
  }
  for (std::size_t i = 0; i < k; ++i) {
    for (const auto& node : net.nodes()) {
      if (node.id == commodities[i].source || node.id == commodities[i].sink) continue;
      std::vector<double> row(vars, 0.0);
      for (const auto& l : net.links()) {
        const auto a = static_cast<std::size_t>(l.index - 1);
        if (l.head == node.id) row[fvar(i, a)] += 1.0;
        if (l.tail == node.id) row[fvar(i, a)] -= 1.0;
      }
      if (std::any_of(row.begin(), row.end(), [](double v) { return v != 0.0; }))
        lp.add(std::move(row), Relation::equal, 0.0);
    }
  }
  // sum_i f_i(a) / b(a) <= sum_{L containing a} lambda_L
  for (std::size_t a = 0; a < n; ++a) {
    std::vector<double> row(vars, 0.0);
    for (std::size_t i = 0; i < k; ++i) row[fvar(i, a)] = 1.0 / bandwidth[a];
    for (std::size_t s = 0; s < sets; ++s) {
      const auto& links = cat.sublink_sets[s];
      if (std::binary_search(links.begin(), links.end(), static_cast<int>(a)))
        row[flow_vars + s] = -1.0;
    }
    lp.add(std::move(row), Relation::less_equal, 0.0);
  }
  {
    std::vector<double> row(vars, 0.0);
    for (std::size_t s = 0; s < sets; ++s) row[flow_vars + s] = 1.0;
    lp.add(std::move(row), Relation::less_equal, 1.0);
  }

  return lp;
}

/// Solves the multiflow LP without (plain) or with (coding) hyperarcs.
/// Variables are the per-commodity link flows followed by one lambda per
/// catalog set.
inline MmfSolution solve_mmf(const Network& net, std::span<const Commodity> commodities, Mode mode,
                             const MmfOptions& opt = {}) {
  const std::size_t n = net.link_count();
  for (const auto& c : commodities) {
    if (!net.has_node(c.source) || !net.has_node(c.sink))
      throw ValidationError("commodity references an unknown node");
    if (c.source == c.sink) throw ValidationError("commodity source equals sink");
  }
  std::vector<double> bw(n, 1.0);
  if (opt.bandwidth) {
    if (opt.bandwidth->size() != n) throw ValidationError("bandwidth length does not match the link count");
    for (double b : *opt.bandwidth)
      if (!std::isfinite(b) || b <= 0.0) throw ValidationError("bandwidth entries must be positive");
    bw = *opt.bandwidth;
  }

  MmfSolution sol;
  sol.mode = mode;
  sol.bandwidth = bw;
  sol.commodities.assign(commodities.begin(), commodities.end());
  sol.catalog = catalog_for(net, mode, opt.enumeration_cap);
  if (commodities.empty()) return sol;

  const std::size_t k = commodities.size();
  const std::size_t sets = sol.catalog.size();
  const std::size_t flow_vars = k * n;
  auto fvar = [n](std::size_t i, std::size_t a) { return i * n + a; };
  const LinearProgram lp = multiflow_lp(net, commodities, sol.catalog, bw);
  const LpOutcome out = solve_lp(lp);
  if (out.status != LpStatus::optimal)
    throw SolverError(std::string("multiflow LP ended ") + to_string(out.status));

  sol.flows.assign(k, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t a = 0; a < n; ++a) sol.flows[i][a] = out.solution[fvar(i, a)];
    sol.commodity_values.push_back(flow_value(net, sol.flows[i], commodities[i].source));
  }
  sol.throughput = out.objective_value;
  sol.schedule = detail::positive_weights(out.solution, flow_vars, sets);
  return sol;
}

struct Membership {
  bool inside = false;
  std::vector<CatalogWeight> certificate;  // lambda > 0, sum <= 1
};

/// Is d dominated by a convex combination of catalog incidence vectors?
inline Membership polytope_membership(std::span<const double> d, const SchedulableSetCatalog& cat) {
  validate_demand(d, cat.link_count);
  Membership m;
  if (std::all_of(d.begin(), d.end(), [](double v) { return v == 0.0; })) {
    m.inside = true;
    return m;
  }
  LinearProgram lp;
  lp.objective.assign(cat.size(), 0.0);
  for (std::size_t a = 0; a < cat.link_count; ++a) {
    if (d[a] == 0.0) continue;
    std::vector<double> row(cat.size(), 0.0);
    for (std::size_t s = 0; s < cat.size(); ++s) {
      const auto& links = cat.sublink_sets[s];
      if (std::binary_search(links.begin(), links.end(), static_cast<int>(a))) row[s] = 1.0;
    }
    lp.add(std::move(row), Relation::greater_equal, d[a]);
  }
  lp.add(std::vector<double>(cat.size(), 1.0), Relation::less_equal, 1.0);
  const LpOutcome out = solve_lp(lp);
  if (out.status != LpStatus::optimal) return m;
  m.inside = true;
  m.certificate = detail::positive_weights(out.solution, 0, cat.size());
  return m;
}

struct OptimalSchedule {
  std::vector<CatalogWeight> weights;  // lambda > 0
  double length = 0.0;                 // chi_f
};

/// Minimum-length fractional schedule meeting d; its length is chi_f and may
/// exceed 1.
inline OptimalSchedule optimal_fractional_schedule(std::span<const double> d,
                                                   const SchedulableSetCatalog& cat) {
  validate_demand(d, cat.link_count);
  OptimalSchedule sched;
  LinearProgram lp;
  lp.objective.assign(cat.size(), -1.0);
  for (std::size_t a = 0; a < cat.link_count; ++a) {
    if (d[a] == 0.0) continue;
    std::vector<double> row(cat.size(), 0.0);
    bool covered = false;
    for (std::size_t s = 0; s < cat.size(); ++s) {
      const auto& links = cat.sublink_sets[s];
      if (std::binary_search(links.begin(), links.end(), static_cast<int>(a))) {
        row[s] = 1.0;
        covered = true;
      }
    }
    if (!covered)
      throw ValidationError("uncoverable demand: link position " + std::to_string(a) +
                            " is in no schedulable set");
    lp.add(std::move(row), Relation::greater_equal, d[a]);
  }
  if (lp.constraints.empty()) return sched;
  const LpOutcome out = solve_lp(lp);
  if (out.status != LpStatus::optimal)
    throw SolverError(std::string("fractional schedule LP ended ") + to_string(out.status));
  sched.weights = detail::positive_weights(out.solution, 0, cat.size());
  sched.length = -out.objective_value;
  return sched;
}

}  // namespace wnc
