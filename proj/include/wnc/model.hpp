#pragma once

// Geometric network model: nodes with communication/interference radii,
// directed communication links, and coding hyperarcs.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "wnc/error.hpp"

namespace wnc {

using NodeId = int;

struct Node {
  NodeId id = 0;
  double x = 0.0;
  double y = 0.0;
  double comm_radius = 1.0;    // r, meters
  double interf_radius = 1.0;  // rho, meters
};

inline double distance(const Node& a, const Node& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

// Link indices are 1-based positions in the canonical (tail, head) order.
struct Link {
  NodeId tail = 0;
  NodeId head = 0;
  int index = 0;

  friend bool operator==(const Link&, const Link&) = default;
};

// A broadcast of one (possibly encoded) packet from `tail` to every node in
// `heads`. Weight-1 hyperarcs are plain links.
struct Hyperarc {
  NodeId tail = 0;
  std::vector<NodeId> heads;  // sorted, unique
  int index = 0;              // 1-based

  int weight() const { return static_cast<int>(heads.size()); }

  friend bool operator==(const Hyperarc&, const Hyperarc&) = default;
};

namespace detail {

inline void check_node(const Node& n) {
  const std::string who = "node " + std::to_string(n.id);
  if (!std::isfinite(n.x) || !std::isfinite(n.y))
    throw ValidationError(who + ": position must be finite");
  if (!std::isfinite(n.comm_radius) || n.comm_radius <= 0.0)
    throw ValidationError(who + ": communication radius must be positive");
  if (!std::isfinite(n.interf_radius) || n.interf_radius < n.comm_radius)
    throw ValidationError(who + ": interference radius must be >= communication radius");
}

inline std::vector<Node> sorted_nodes(std::vector<Node> nodes) {
  std::sort(nodes.begin(), nodes.end(),
            [](const Node& a, const Node& b) { return a.id < b.id; });
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    if (nodes[i].id == nodes[i - 1].id)
      throw ValidationError("duplicate node id " + std::to_string(nodes[i].id));
  }
  for (const auto& n : nodes) check_node(n);
  return nodes;
}

// Coded hyperarcs after the weight-1 block: by tail, then weight, then heads.
inline bool coded_before(const Hyperarc& a, const Hyperarc& b) {
  if (a.tail != b.tail) return a.tail < b.tail;
  if (a.weight() != b.weight()) return a.weight() < b.weight();
  return a.heads < b.heads;
}

}  // namespace detail

/// All pairs (i, j), i != j, with 0 < d_ij <= r(i), in (tail, head) order and
/// indexed from 1. Independent of the order nodes are supplied in.
inline std::vector<Link> build_links(std::vector<Node> nodes) {
  nodes = detail::sorted_nodes(std::move(nodes));
  std::vector<Link> links;
  for (const auto& from : nodes) {
    for (const auto& to : nodes) {
      if (from.id == to.id) continue;
      const double d = distance(from, to);
      if (d > 0.0 && d <= from.comm_radius)
        links.push_back({from.id, to.id, static_cast<int>(links.size()) + 1});
    }
  }
  return links;
}

/// Immutable network: nodes, links A and hyperarcs Â (A ⊆ Â as the weight-1
/// hyperarcs, which always occupy positions 1..|A| in link order).
class Network {
 public:
  Network() = default;

  explicit Network(std::vector<Node> nodes)
      : nodes_(detail::sorted_nodes(std::move(nodes))) {
    for (std::size_t i = 0; i < nodes_.size(); ++i) node_pos_[nodes_[i].id] = i;
    links_ = build_links(nodes_);
    for (std::size_t i = 0; i < links_.size(); ++i)
      link_pos_[{links_[i].tail, links_[i].head}] = static_cast<int>(i);
    install_hyperarcs({});
  }

  /// Copy of this network whose Â holds every link plus the given coded
  /// hyperarcs. Input indices are ignored; duplicates collapse.
  Network with_hyperarcs(const std::vector<Hyperarc>& hyperarcs) const {
    Network out = *this;
    out.install_hyperarcs(hyperarcs);
    return out;
  }

  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<Link>& links() const { return links_; }
  const std::vector<Hyperarc>& hyperarcs() const { return hyperarcs_; }

  std::size_t link_count() const { return links_.size(); }
  std::size_t hyperarc_count() const { return hyperarcs_.size(); }

  bool has_node(NodeId id) const { return node_pos_.count(id) != 0; }

  const Node& node(NodeId id) const {
    auto it = node_pos_.find(id);
    if (it == node_pos_.end())
      throw ValidationError("unknown node id " + std::to_string(id));
    return nodes_[it->second];
  }

  double distance(NodeId a, NodeId b) const { return wnc::distance(node(a), node(b)); }

  /// 0-based position of link (tail, head), if it exists.
  std::optional<int> link_position(NodeId tail, NodeId head) const {
    auto it = link_pos_.find({tail, head});
    if (it == link_pos_.end()) return std::nullopt;
    return it->second;
  }

  /// 0-based link positions of the sub-links of the hyperarc at `pos`.
  const std::vector<int>& sub_link_positions(std::size_t pos) const { return sub_links_[pos]; }

  /// Out-neighbours of `id` in link order.
  std::vector<NodeId> out_neighbors(NodeId id) const {
    std::vector<NodeId> out;
    for (const auto& l : links_)
      if (l.tail == id) out.push_back(l.head);
    return out;
  }

  /// W, the largest hyperarc weight (0 for a network without links).
  int max_weight() const {
    int w = 0;
    for (const auto& h : hyperarcs_) w = std::max(w, h.weight());
    return w;
  }

 private:
  void install_hyperarcs(const std::vector<Hyperarc>& extra) {
    std::vector<Hyperarc> coded;
    std::set<std::pair<NodeId, std::vector<NodeId>>> seen;
    for (auto h : extra) {
      std::sort(h.heads.begin(), h.heads.end());
      const std::string who = "hyperarc with tail " + std::to_string(h.tail);
      if (h.heads.empty()) throw ValidationError(who + ": heads must be nonempty");
      if (std::adjacent_find(h.heads.begin(), h.heads.end()) != h.heads.end())
        throw ValidationError(who + ": repeated head");
      if (!has_node(h.tail)) throw ValidationError(who + ": unknown tail node");
      for (NodeId j : h.heads) {
        if (j == h.tail) throw ValidationError(who + ": tail listed among heads");
        if (!link_position(h.tail, j))
          throw ValidationError(who + ": (" + std::to_string(h.tail) + "," +
                                std::to_string(j) + ") is not a link");
      }
      if (h.weight() == 1) continue;  // already present as a link
      if (!seen.insert({h.tail, h.heads}).second) continue;
      coded.push_back(std::move(h));
    }
    std::sort(coded.begin(), coded.end(), detail::coded_before);

    hyperarcs_.clear();
    sub_links_.clear();
    for (const auto& l : links_) {
      hyperarcs_.push_back({l.tail, {l.head}, l.index});
      sub_links_.push_back({l.index - 1});
    }
    for (auto& h : coded) {
      h.index = static_cast<int>(hyperarcs_.size()) + 1;
      std::vector<int> subs;
      for (NodeId j : h.heads) subs.push_back(*link_position(h.tail, j));
      std::sort(subs.begin(), subs.end());
      sub_links_.push_back(std::move(subs));
      hyperarcs_.push_back(std::move(h));
    }
  }

  std::vector<Node> nodes_;
  std::map<NodeId, std::size_t> node_pos_;
  std::vector<Link> links_;
  std::map<std::pair<NodeId, NodeId>, int> link_pos_;
  std::vector<Hyperarc> hyperarcs_;
  std::vector<std::vector<int>> sub_links_;
};

/// {(tail, j) : j in heads}, in link order.
inline std::vector<Link> sub_links(const Network& net, const Hyperarc& h) {
  std::vector<Link> out;
  for (NodeId j : h.heads) {
    auto pos = net.link_position(h.tail, j);
    if (!pos) throw ValidationError("hyperarc sub-link is not a link of the network");
    out.push_back(net.links()[static_cast<std::size_t>(*pos)]);
  }
  std::sort(out.begin(), out.end(), [](const Link& a, const Link& b) { return a.index < b.index; });
  return out;
}

/// Every weight-1 hyperarc plus, at each coding node, every subset of its
/// out-neighbours of size 2..max_coding_degree. Canonically ordered.
inline std::vector<Hyperarc> generate_hyperarcs(const Network& net,
                                                const std::vector<NodeId>& coding_nodes,
                                                int max_coding_degree = 3) {
  if (max_coding_degree < 2) throw ValidationError("max_coding_degree must be >= 2");
  std::vector<Hyperarc> coded;
  for (NodeId c : std::set<NodeId>(coding_nodes.begin(), coding_nodes.end())) {
    if (!net.has_node(c))
      throw ValidationError("unknown coding node id " + std::to_string(c));
    const auto nbrs = net.out_neighbors(c);
    const std::size_t k = nbrs.size();
    if (k < 2) continue;
    for (int size = 2; size <= max_coding_degree && static_cast<std::size_t>(size) <= k; ++size) {
      std::vector<bool> pick(k, false);
      std::fill(pick.begin(), pick.begin() + size, true);
      do {
        Hyperarc h{c, {}, 0};
        for (std::size_t i = 0; i < k; ++i)
          if (pick[i]) h.heads.push_back(nbrs[i]);
        coded.push_back(std::move(h));
      } while (std::prev_permutation(pick.begin(), pick.end()));
    }
  }
  return net.with_hyperarcs(coded).hyperarcs();
}

}  // namespace wnc
