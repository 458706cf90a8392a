// Loads an instance, spreads a uniform demand over its links and compares the
// greedy coding-first schedule with the optimal fractional one.
//
//   grid_schedule samples/instances/grid.json 0.1

#include <cstdio>
#include <cstdlib>
#include <exception>
#include <vector>

#include "wnc/cfs.hpp"
#include "wnc/io.hpp"

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: %s INSTANCE [DEMAND_PER_LINK]\n", argv[0]);
    return 1;
  }
  try {
    const auto inst = wnc::load_instance(argv[1]);
    const double per_link = argc > 2 ? std::atof(argv[2]) : 0.1;
    const std::vector<double> d(inst.network.link_count(), per_link);

    const auto gh = wnc::build_conflict_graph(inst.network, wnc::Level::hyperarc);
    const auto nb = wnc::closed_neighborhoods(wnc::build_conflict_graph(inst.network, wnc::Level::link));
    const auto cfs = wnc::cfs_schedule(gh, wnc::coding_first_ordering(gh), d);

    std::printf("links %zu, hyperarcs %zu, max conflict degree %d\n", inst.network.link_count(), gh.size(),
                nb.max_degree);
    std::printf("CFS length       %.6f (%zu slots)\n", cfs.length(), cfs.slots.size());
    std::printf("neighbourhood bd %.6f\n", wnc::cfs_length_bound(d, nb));
    if (gh.size() <= static_cast<std::size_t>(wnc::kDefaultEnumerationCap)) {
      const auto cat = wnc::enumerate_schedulable_sets(gh);
      std::printf("optimal length   %.6f\n", wnc::optimal_fractional_schedule(d, cat).length);
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 1;
  }
}
