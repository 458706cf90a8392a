#pragma once

// Coding-First Scheduling: a greedy fractional hyperarc scheduler that
// favours encoded transmissions, plus the neighbourhood bounds used to
// judge it.

#include <algorithm>
#include <cstddef>
#include <limits>
#include <numeric>
#include <span>
#include <vector>

#include "wnc/conflict.hpp"
#include "wnc/error.hpp"
#include "wnc/mmf.hpp"

namespace wnc {

/// Hyperarc vertices by descending weight, ascending index within a weight.
struct CodingFirstOrdering {
  std::vector<int> order;  // 0-based vertex positions
};

inline CodingFirstOrdering coding_first_ordering(const ConflictGraph& gh) {
  CodingFirstOrdering omega;
  omega.order.resize(gh.size());
  std::iota(omega.order.begin(), omega.order.end(), 0);
  std::stable_sort(omega.order.begin(), omega.order.end(), [&](int a, int b) {
    const auto& va = gh.vertex(static_cast<std::size_t>(a));
    const auto& vb = gh.vertex(static_cast<std::size_t>(b));
    if (va.weight != vb.weight) return va.weight > vb.weight;
    return va.index < vb.index;
  });
  return omega;
}

/// Greedy scan of the candidates in Ω order, keeping every vertex with no
/// edge to the ones kept so far. Result is sorted.
inline std::vector<int> coding_first_mwis(std::span<const int> candidates,
                                          const CodingFirstOrdering& omega,
                                          const ConflictGraph& gh) {
  if (candidates.empty()) throw ValidationError("coding_first_mwis: empty candidate set");
  std::vector<bool> in_u(gh.size(), false);
  for (int v : candidates) in_u.at(static_cast<std::size_t>(v)) = true;
  std::vector<int> picked;
  for (int v : omega.order) {
    if (!in_u[static_cast<std::size_t>(v)]) continue;
    const bool free = std::none_of(picked.begin(), picked.end(), [&](int u) {
      return gh.adjacent(static_cast<std::size_t>(u), static_cast<std::size_t>(v));
    });
    if (free) picked.push_back(v);
  }
  std::sort(picked.begin(), picked.end());
  return picked;
}

struct FractionalSchedule {
  struct Slot {
    std::vector<int> set;  // 0-based hyperarc vertex positions
    double lambda = 0.0;
  };
  std::vector<Slot> slots;

  double length() const {
    double s = 0.0;
    for (const auto& slot : slots) s += slot.lambda;
    return s;
  }

  /// Sub-link expansion, one entry per slot.
  std::vector<ScheduleEntry> link_entries(const ConflictGraph& gh) const {
    std::vector<ScheduleEntry> out;
    for (const auto& slot : slots) {
      ScheduleEntry e{{}, slot.lambda};
      for (int v : slot.set) {
        const auto& subs = gh.vertex(static_cast<std::size_t>(v)).sub_links;
        e.links.insert(e.links.end(), subs.begin(), subs.end());
      }
      std::sort(e.links.begin(), e.links.end());
      out.push_back(std::move(e));
    }
    return out;
  }
};

inline constexpr double kResidualFloor = 1e-12;

/// Runs CFS on demand d (indexed by link position). The resulting capacity
/// function meets d exactly; the loop ends after at most |A| iterations.
inline FractionalSchedule cfs_schedule(const ConflictGraph& gh, const CodingFirstOrdering& omega,
                                       std::span<const double> d) {
  validate_demand(d, gh.link_count());
  if (omega.order.size() != gh.size())
    throw ValidationError("cfs_schedule: ordering does not cover the conflict graph");
  std::vector<double> residual(d.begin(), d.end());
  std::vector<double> vdemand(gh.size(), 0.0);
  std::vector<bool> alive(gh.size(), true);
  FractionalSchedule out;

  for (std::size_t iter = 0;; ++iter) {
    // Hyperarc demand: the smallest residual among its sub-links. For a
    // weight-1 vertex this is its own link's residual.
    std::vector<int> remaining;
    for (std::size_t v = 0; v < gh.size(); ++v) {
      if (!alive[v]) continue;
      double m = std::numeric_limits<double>::infinity();
      for (int a : gh.vertex(v).sub_links) m = std::min(m, residual[static_cast<std::size_t>(a)]);
      vdemand[v] = m;
      if (m <= 0.0)
        alive[v] = false;
      else
        remaining.push_back(static_cast<int>(v));
    }
    if (remaining.empty()) break;
    if (iter > gh.link_count())
      throw SolverError("cfs_schedule: no progress (iteration bound exceeded)");

    auto picked = coding_first_mwis(remaining, omega, gh);
    double lambda = std::numeric_limits<double>::infinity();
    for (int v : picked) lambda = std::min(lambda, vdemand[static_cast<std::size_t>(v)]);
    for (int v : picked) {
      for (int a : gh.vertex(static_cast<std::size_t>(v)).sub_links) {
        double& r = residual[static_cast<std::size_t>(a)];
        r -= lambda;
        if (r <= kResidualFloor) r = 0.0;
      }
    }
    out.slots.push_back({std::move(picked), lambda});
  }
  return out;
}

/// max_i d(V_i); bounds the CFS schedule length.
inline double cfs_length_bound(std::span<const double> d, const Neighborhoods& nb) {
  double best = 0.0;
  for (const auto& vi : nb.sets) {
    double s = 0.0;
    for (int a : vi) s += d[static_cast<std::size_t>(a)];
    best = std::max(best, s);
  }
  return best;
}

/// d lies in the inductive schedulable polytope: max_i d(V_i) <= 1.
inline bool inductive_polytope_membership(std::span<const double> d, const Neighborhoods& nb,
                                          double tolerance = 1e-9) {
  return cfs_length_bound(d, nb) <= 1.0 + tolerance;
}

}  // namespace wnc
