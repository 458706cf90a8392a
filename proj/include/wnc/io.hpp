#pragma once

// Instance and demand files (JSON). Parsing is strict: unknown fields,
// wrong types and dangling node references are validation errors carrying
// the offending field path.

#include <cmath>
#include <cstddef>
#include <fstream>
#include <initializer_list>
#include <limits>
#include <optional>
#include <regex>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "wnc/error.hpp"
#include "wnc/mmf.hpp"
#include "wnc/model.hpp"

namespace wnc {

using json = nlohmann::json;

struct Instance {
  Network network;  // Â holds explicit or generated hyperarcs
  std::vector<Commodity> commodities;
  std::optional<std::vector<double>> bandwidth;  // per link position
};

namespace detail {

inline void only_fields(const json& obj, const std::string& where,
                        std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) throw ValidationError(where + ": expected an object");
  for (const auto& [key, _] : obj.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) throw ValidationError(where + ": unknown field \"" + key + "\"");
  }
}

inline const json& required(const json& obj, const std::string& where, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ValidationError(where + ": missing field \"" + key + "\"");
  return *it;
}

inline int as_int(const json& v, const std::string& where) {
  if (!v.is_number_integer()) throw ValidationError(where + ": expected an integer");
  const auto x = v.get<long long>();
  if (x < std::numeric_limits<int>::min() || x > std::numeric_limits<int>::max())
    throw ValidationError(where + ": integer out of range");
  return static_cast<int>(x);
}

inline double as_number(const json& v, const std::string& where) {
  if (!v.is_number()) throw ValidationError(where + ": expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ValidationError(where + ": expected a finite number");
  return x;
}

inline const json& as_array(const json& v, const std::string& where) {
  if (!v.is_array()) throw ValidationError(where + ": expected an array");
  return v;
}

inline std::string at(const std::string& base, std::size_t i) {
  return base + "[" + std::to_string(i) + "]";
}

}  // namespace detail

/// Parses a "tail-head" link key, e.g. "3-1".
inline std::pair<NodeId, NodeId> parse_link_key(const std::string& key) {
  static const std::regex pattern(R"(^(-?\d+)-(-?\d+)$)");
  std::smatch m;
  if (!std::regex_match(key, m, pattern))
    throw ValidationError("link key \"" + key + "\" is not of the form \"tail-head\"");
  return {std::stoi(m[1].str()), std::stoi(m[2].str())};
}

inline std::string link_key(const Link& l) {
  return std::to_string(l.tail) + "-" + std::to_string(l.head);
}

/// Per-link values keyed by "tail-head"; absent links take `fallback`.
inline std::vector<double> parse_link_map(const json& obj, const Network& net,
                                          const std::string& where, double fallback) {
  if (!obj.is_object()) throw ValidationError(where + ": expected an object keyed by \"tail-head\"");
  std::vector<double> out(net.link_count(), fallback);
  for (const auto& [key, value] : obj.items()) {
    const std::string field = where + "." + key;
    std::pair<NodeId, NodeId> ends;
    try {
      ends = parse_link_key(key);
    } catch (const ValidationError& e) {
      throw ValidationError(where + ": " + e.what());
    }
    auto pos = net.link_position(ends.first, ends.second);
    if (!pos) throw ValidationError(field + ": no such link in the network");
    out[static_cast<std::size_t>(*pos)] = detail::as_number(value, field);
  }
  return out;
}

inline Instance parse_instance(const json& doc) {
  detail::only_fields(doc, "instance",
                      {"nodes", "hyperarcs", "coding_nodes", "max_coding_degree", "commodities",
                       "bandwidth", "local_kernels"});

  std::vector<Node> nodes;
  const auto& jn = detail::as_array(detail::required(doc, "instance", "nodes"), "nodes");
  for (std::size_t i = 0; i < jn.size(); ++i) {
    const std::string w = detail::at("nodes", i);
    detail::only_fields(jn[i], w, {"id", "x", "y", "r", "rho"});
    Node n;
    n.id = detail::as_int(detail::required(jn[i], w, "id"), w + ".id");
    n.x = detail::as_number(detail::required(jn[i], w, "x"), w + ".x");
    n.y = detail::as_number(detail::required(jn[i], w, "y"), w + ".y");
    n.comm_radius = detail::as_number(detail::required(jn[i], w, "r"), w + ".r");
    n.interf_radius = detail::as_number(detail::required(jn[i], w, "rho"), w + ".rho");
    nodes.push_back(n);
  }

  Instance inst;
  inst.network = Network(std::move(nodes));

  if (doc.contains("hyperarcs")) {
    // Explicit coding structure wins over generation.
    std::vector<Hyperarc> arcs;
    const auto& jh = detail::as_array(doc["hyperarcs"], "hyperarcs");
    for (std::size_t i = 0; i < jh.size(); ++i) {
      const std::string w = detail::at("hyperarcs", i);
      detail::only_fields(jh[i], w, {"tail", "heads"});
      Hyperarc h;
      h.tail = detail::as_int(detail::required(jh[i], w, "tail"), w + ".tail");
      const auto& heads = detail::as_array(detail::required(jh[i], w, "heads"), w + ".heads");
      for (std::size_t k = 0; k < heads.size(); ++k)
        h.heads.push_back(detail::as_int(heads[k], detail::at(w + ".heads", k)));
      arcs.push_back(std::move(h));
    }
    try {
      inst.network = inst.network.with_hyperarcs(arcs);
    } catch (const ValidationError& e) {
      throw ValidationError(std::string("hyperarcs: ") + e.what());
    }
  } else if (doc.contains("coding_nodes")) {
    std::vector<NodeId> coding;
    const auto& jc = detail::as_array(doc["coding_nodes"], "coding_nodes");
    for (std::size_t i = 0; i < jc.size(); ++i)
      coding.push_back(detail::as_int(jc[i], detail::at("coding_nodes", i)));
    int degree = 3;
    if (doc.contains("max_coding_degree"))
      degree = detail::as_int(doc["max_coding_degree"], "max_coding_degree");
    try {
      inst.network = inst.network.with_hyperarcs(generate_hyperarcs(inst.network, coding, degree));
    } catch (const ValidationError& e) {
      throw ValidationError(std::string("coding_nodes: ") + e.what());
    }
  } else if (doc.contains("max_coding_degree")) {
    const int degree = detail::as_int(doc["max_coding_degree"], "max_coding_degree");
    if (degree < 2) throw ValidationError("max_coding_degree: must be >= 2");
  }

  if (doc.contains("commodities")) {
    const auto& jc = detail::as_array(doc["commodities"], "commodities");
    for (std::size_t i = 0; i < jc.size(); ++i) {
      const std::string w = detail::at("commodities", i);
      detail::only_fields(jc[i], w, {"source", "sink"});
      Commodity c;
      c.source = detail::as_int(detail::required(jc[i], w, "source"), w + ".source");
      c.sink = detail::as_int(detail::required(jc[i], w, "sink"), w + ".sink");
      if (!inst.network.has_node(c.source)) throw ValidationError(w + ".source: unknown node id");
      if (!inst.network.has_node(c.sink)) throw ValidationError(w + ".sink: unknown node id");
      if (c.source == c.sink) throw ValidationError(w + ": source equals sink");
      inst.commodities.push_back(c);
    }
  }

  if (doc.contains("bandwidth")) {
    auto bw = parse_link_map(doc["bandwidth"], inst.network, "bandwidth", 1.0);
    for (double b : bw)
      if (b <= 0.0) throw ValidationError("bandwidth: entries must be positive");
    inst.bandwidth = std::move(bw);
  }
  // local_kernels is accepted for completeness; nothing consumes it.
  return inst;
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError(path + ": cannot open file");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return json::parse(buf.str());
  } catch (const json::parse_error& e) {
    throw ValidationError(path + ": malformed JSON: " + e.what());
  }
}

inline Instance load_instance(const std::string& path) {
  const json doc = read_json_file(path);
  try {
    return parse_instance(doc);
  } catch (const ValidationError& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

/// Demand file: {"tail-head": number, ...}; unlisted links demand 0.
inline std::vector<double> parse_demand(const json& doc, const Network& net) {
  auto d = parse_link_map(doc, net, "demand", 0.0);
  validate_demand(d, net.link_count());
  return d;
}

inline std::vector<double> load_demand(const std::string& path, const Network& net) {
  const json doc = read_json_file(path);
  try {
    return parse_demand(doc, net);
  } catch (const ValidationError& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

inline json instance_to_json(const Instance& inst) {
  json doc;
  doc["nodes"] = json::array();
  for (const auto& n : inst.network.nodes())
    doc["nodes"].push_back({{"id", n.id}, {"x", n.x}, {"y", n.y}, {"r", n.comm_radius},
                            {"rho", n.interf_radius}});
  json arcs = json::array();
  for (const auto& h : inst.network.hyperarcs())
    if (h.weight() > 1) arcs.push_back({{"tail", h.tail}, {"heads", h.heads}});
  if (!arcs.empty()) doc["hyperarcs"] = arcs;
  doc["commodities"] = json::array();
  for (const auto& c : inst.commodities)
    doc["commodities"].push_back({{"source", c.source}, {"sink", c.sink}});
  if (inst.bandwidth) {
    json bw = json::object();
    for (const auto& l : inst.network.links())
      bw[link_key(l)] = (*inst.bandwidth)[static_cast<std::size_t>(l.index - 1)];
    doc["bandwidth"] = bw;
  }
  return doc;
}

/// Three collinear nodes a=(0,0), relay=(1,0), b=(2,0) with unit radii,
/// exchanging traffic through the relay. Ids: a=1, b=2, relay=3, so the
/// relay's out-links take indices 3 and 4. With `coded` the relay may XOR
/// both directions into hyperarc (3, {1, 2}).
inline Instance canonical_relay_instance(bool coded = true) {
  Instance inst;
  inst.network = Network({{1, 0.0, 0.0, 1.0, 1.0}, {2, 2.0, 0.0, 1.0, 1.0}, {3, 1.0, 0.0, 1.0, 1.0}});
  if (coded) inst.network = inst.network.with_hyperarcs({{3, {1, 2}, 0}});
  inst.commodities = {{1, 2}, {2, 1}};
  return inst;
}

}  // namespace wnc
