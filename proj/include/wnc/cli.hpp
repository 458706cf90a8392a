#pragma once

// Subcommand dispatch and report rendering for the wnc command-line tool.
// Kept in a header so tests can drive `run` without spawning a process.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "wnc/cfs.hpp"
#include "wnc/conflict.hpp"
#include "wnc/error.hpp"
#include "wnc/io.hpp"
#include "wnc/mmf.hpp"

namespace wnc::cli {

enum class Format { json, table };

struct RunConfig {
  std::string subcommand;  // solve | schedule | inspect | compare | demo
  std::string instance_path;
  Mode mode = Mode::coding;
  std::string demand_path;
  std::string algorithm = "cfs";  // cfs | exact
  int enumeration_cap = kDefaultEnumerationCap;
  Format format = Format::json;
  std::string out_dir = ".";  // demo only
};

enum ExitStatus : int { kOk = 0, kValidation = 1, kSolver = 2 };

/// 9 significant digits, the precision of every reported number.
inline double rounded(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  double r = std::strtod(buf, nullptr);
  return r == 0.0 ? 0.0 : r;  // no "-0.0"
}

inline std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", rounded(v));
  return buf;
}

inline json json_number(double v) { return rounded(v); }

inline json index_array(const std::vector<int>& positions) {
  json a = json::array();
  for (int p : positions) a.push_back(p + 1);
  return a;
}

// Aligned text table; first row is the header.
inline void print_table(std::ostream& os, const std::vector<std::vector<std::string>>& rows) {
  if (rows.empty()) return;
  std::vector<std::size_t> width(rows.front().size(), 0);
  for (const auto& r : rows)
    for (std::size_t c = 0; c < r.size(); ++c) width[c] = std::max(width[c], r[c].size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::string line;
    for (std::size_t c = 0; c < rows[i].size(); ++c) {
      if (c) line += "  ";
      line += rows[i][c];
      if (c + 1 < rows[i].size()) line.append(width[c] - rows[i][c].size(), ' ');
    }
    os << line << '\n';
    if (i == 0) {
      for (std::size_t c = 0; c < width.size(); ++c) os << (c ? "  " : "") << std::string(width[c], '-');
      os << '\n';
    }
  }
}

inline std::string join(const std::vector<int>& positions) {
  std::string s = "{";
  for (std::size_t i = 0; i < positions.size(); ++i) s += (i ? "," : "") + std::to_string(positions[i] + 1);
  return s + "}";
}

inline json solve_report(const Network& net, const MmfSolution& sol) {
  json r;
  r["mode"] = to_string(sol.mode);
  r["throughput"] = json_number(sol.throughput);
  r["commodities"] = json::array();
  for (std::size_t i = 0; i < sol.commodities.size(); ++i)
    r["commodities"].push_back({{"source", sol.commodities[i].source},
                                {"sink", sol.commodities[i].sink},
                                {"value", json_number(sol.commodity_values[i])}});
  r["flows"] = json::array();
  for (const auto& l : net.links()) {
    const auto a = static_cast<std::size_t>(l.index - 1);
    json per = json::array();
    double total = 0.0;
    for (const auto& f : sol.flows) {
      per.push_back(json_number(f[a]));
      total += f[a];
    }
    r["flows"].push_back({{"link", link_key(l)}, {"index", l.index}, {"per_commodity", per},
                          {"total", json_number(total)}});
  }
  r["schedule"] = json::array();
  for (const auto& w : sol.schedule)
    r["schedule"].push_back({{"set", index_array(sol.catalog.hyperarc_sets[w.set])},
                             {"links", index_array(sol.catalog.sublink_sets[w.set])},
                             {"lambda", json_number(w.lambda)}});
  r["schedule_length"] = json_number(sol.schedule_length());
  return r;
}

inline void solve_table(std::ostream& os, const Network& net, const MmfSolution& sol) {
  os << "mode: " << to_string(sol.mode) << "\nthroughput: " << fmt(sol.throughput) << "\n\n";
  std::vector<std::vector<std::string>> rows{{"commodity", "source", "sink", "value"}};
  for (std::size_t i = 0; i < sol.commodities.size(); ++i)
    rows.push_back({std::to_string(i + 1), std::to_string(sol.commodities[i].source),
                    std::to_string(sol.commodities[i].sink), fmt(sol.commodity_values[i])});
  print_table(os, rows);
  os << '\n';
  rows = {{"link", "tail-head", "total flow"}};
  for (const auto& l : net.links()) {
    double total = 0.0;
    for (const auto& f : sol.flows) total += f[static_cast<std::size_t>(l.index - 1)];
    rows.push_back({std::to_string(l.index), link_key(l), fmt(total)});
  }
  print_table(os, rows);
  os << '\n';
  rows = {{"set", "links", "lambda"}};
  for (const auto& w : sol.schedule)
    rows.push_back({join(sol.catalog.hyperarc_sets[w.set]), join(sol.catalog.sublink_sets[w.set]),
                    fmt(w.lambda)});
  print_table(os, rows);
}

inline int cmd_solve(const RunConfig& cfg, const Instance& inst, std::ostream& out) {
  MmfOptions opt;
  opt.bandwidth = inst.bandwidth;
  opt.enumeration_cap = cfg.enumeration_cap;
  const auto sol = solve_mmf(inst.network, inst.commodities, cfg.mode, opt);
  if (cfg.format == Format::json)
    out << solve_report(inst.network, sol).dump(2) << '\n';
  else
    solve_table(out, inst.network, sol);
  return kOk;
}

inline int cmd_compare(const RunConfig& cfg, const Instance& inst, std::ostream& out) {
  MmfOptions opt;
  opt.bandwidth = inst.bandwidth;
  opt.enumeration_cap = cfg.enumeration_cap;
  const auto plain = solve_mmf(inst.network, inst.commodities, Mode::plain, opt);
  const auto coded = solve_mmf(inst.network, inst.commodities, Mode::coding, opt);
  const double gain = coded.throughput - plain.throughput;
  // Both are zero exactly when no commodity has a path.
  const double ratio = plain.throughput > 0.0 ? coded.throughput / plain.throughput : 1.0;
  json r{{"plain", json_number(plain.throughput)},
         {"coding", json_number(coded.throughput)},
         {"absolute_gain", json_number(gain)},
         {"ratio", json_number(ratio)}};
  if (cfg.format == Format::json) {
    out << r.dump(2) << '\n';
  } else {
    print_table(out, {{"mode", "throughput"},
                      {"plain", fmt(plain.throughput)},
                      {"coding", fmt(coded.throughput)}});
    out << "\nabsolute gain: " << fmt(gain) << "\nratio: " << fmt(ratio) << '\n';
  }
  return kOk;
}

inline json inspect_report(const Network& net, int cap) {
  const auto g = build_conflict_graph(net, Level::link);
  const auto gh = build_conflict_graph(net, Level::hyperarc);
  const auto nb = closed_neighborhoods(g);
  json r;
  r["link_graph"] = {{"vertices", g.size()}, {"edges", g.edge_count()}};
  r["hyperarc_graph"] = {{"vertices", gh.size()}, {"edges", gh.edge_count()}};
  r["max_conflict_degree"] = nb.max_degree;
  if (gh.size() <= static_cast<std::size_t>(cap)) {
    const auto cat = enumerate_schedulable_sets(gh, cap);
    r["alpha_star"] = alpha_star(cat, nb);
    r["catalog_size"] = cat.size();
    r["catalog"] = json::array();
    r["sublink_sets"] = json::array();
    for (std::size_t k = 0; k < cat.size(); ++k) {
      r["catalog"].push_back(index_array(cat.hyperarc_sets[k]));
      r["sublink_sets"].push_back(index_array(cat.sublink_sets[k]));
    }
  } else {
    r["alpha_star"] = nullptr;
    r["catalog_size"] = nullptr;
  }
  return r;
}

inline int cmd_inspect(const RunConfig& cfg, const Instance& inst, std::ostream& out) {
  const json r = inspect_report(inst.network, cfg.enumeration_cap);
  if (cfg.format == Format::json) {
    out << r.dump(2) << '\n';
    return kOk;
  }
  auto show = [](const json& v) { return v.is_null() ? std::string("-") : v.dump(); };
  print_table(out, {{"quantity", "value"},
                    {"G vertices", show(r["link_graph"]["vertices"])},
                    {"G edges", show(r["link_graph"]["edges"])},
                    {"G^ vertices", show(r["hyperarc_graph"]["vertices"])},
                    {"G^ edges", show(r["hyperarc_graph"]["edges"])},
                    {"max conflict degree", show(r["max_conflict_degree"])},
                    {"alpha*", show(r["alpha_star"])},
                    {"schedulable sets", show(r["catalog_size"])}});
  if (r.contains("catalog")) {
    out << '\n';
    std::vector<std::vector<std::string>> rows{{"hyperarcs", "sub-links"}};
    for (std::size_t k = 0; k < r["catalog"].size(); ++k)
      rows.push_back({r["catalog"][k].dump(), r["sublink_sets"][k].dump()});
    print_table(out, rows);
  }
  return kOk;
}

inline int cmd_schedule(const RunConfig& cfg, const Instance& inst, const std::vector<double>& d,
                        std::ostream& out) {
  const Network& net = inst.network;
  const auto gh = build_conflict_graph(net, cfg.mode == Mode::plain ? Level::link : Level::hyperarc);
  const auto nb = closed_neighborhoods(build_conflict_graph(net, Level::link));
  const bool exact = cfg.algorithm == "exact";
  const bool enumerable = gh.size() <= static_cast<std::size_t>(cfg.enumeration_cap);
  if (exact && !enumerable) enumerate_schedulable_sets(gh, cfg.enumeration_cap);  // throws

  json r;
  r["algorithm"] = cfg.algorithm;
  r["schedule"] = json::array();
  std::vector<std::vector<std::string>> rows{{"set", "links", "lambda"}};
  double length = 0.0;
  std::optional<double> chi_f;
  std::optional<SchedulableSetCatalog> cat;
  if (enumerable) cat = enumerate_schedulable_sets(gh, cfg.enumeration_cap);

  if (exact) {
    const auto best = optimal_fractional_schedule(d, *cat);
    for (const auto& w : best.weights) {
      r["schedule"].push_back({{"set", index_array(cat->hyperarc_sets[w.set])},
                               {"lambda", json_number(w.lambda)}});
      rows.push_back({join(cat->hyperarc_sets[w.set]), join(cat->sublink_sets[w.set]), fmt(w.lambda)});
    }
    length = best.length;
    chi_f = best.length;
  } else {
    const auto sched = cfs_schedule(gh, coding_first_ordering(gh), d);
    const auto entries = sched.link_entries(gh);
    for (std::size_t s = 0; s < sched.slots.size(); ++s) {
      r["schedule"].push_back({{"set", index_array(sched.slots[s].set)},
                               {"lambda", json_number(sched.slots[s].lambda)}});
      rows.push_back({join(sched.slots[s].set), join(entries[s].links), fmt(sched.slots[s].lambda)});
    }
    length = sched.length();
    if (cat) chi_f = optimal_fractional_schedule(d, *cat).length;
  }

  const double bound = cfs_length_bound(d, nb);
  r["length"] = json_number(length);
  r["bound_theorem5"] = json_number(bound);
  r["chi_f"] = chi_f ? json(json_number(*chi_f)) : json(nullptr);
  r["ratio"] = chi_f && *chi_f > 0.0 ? json(json_number(length / *chi_f)) : json(nullptr);

  if (cfg.format == Format::json) {
    out << r.dump(2) << '\n';
  } else {
    print_table(out, rows);
    out << "\nlength: " << fmt(length) << "\nneighbourhood bound: " << fmt(bound)
        << "\nchi_f: " << (chi_f ? fmt(*chi_f) : "-")
        << "\nratio: " << (r["ratio"].is_null() ? "-" : fmt(length / *chi_f)) << '\n';
  }
  return kOk;
}

inline int cmd_demo(const RunConfig& cfg, std::ostream& out) {
  namespace fs = std::filesystem;
  const Instance inst = canonical_relay_instance(true);
  fs::create_directories(cfg.out_dir);
  const fs::path instance_file = fs::path(cfg.out_dir) / "relay.json";
  const fs::path demand_file = fs::path(cfg.out_dir) / "relay_demand.json";
  json demand = json::object();
  for (const auto& l : inst.network.links()) demand[link_key(l)] = 1.0 / 3.0;
  std::ofstream(instance_file) << instance_to_json(inst).dump(2) << '\n';
  std::ofstream(demand_file) << demand.dump(2) << '\n';
  if (!fs::exists(instance_file) || !fs::exists(demand_file))
    throw ValidationError("demo: cannot write to " + cfg.out_dir);
  if (cfg.format == Format::json)
    out << json{{"instance", instance_file.string()}, {"demand", demand_file.string()}}.dump(2) << '\n';
  else
    out << "wrote " << instance_file.string() << "\nwrote " << demand_file.string() << '\n';
  return kOk;
}

/// Runs one subcommand. Reports go to `out`, diagnostics to `err`.
/// Exit status: 0 ok, 1 validation error, 2 solver/enumeration error.
inline int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    if (cfg.subcommand == "demo") return cmd_demo(cfg, out);
    if (cfg.algorithm != "cfs" && cfg.algorithm != "exact")
      throw ValidationError("--algorithm must be cfs or exact");
    if (cfg.enumeration_cap < 0 || cfg.enumeration_cap > kMaxEnumerationCap)
      throw ValidationError("--cap must be in [0, " + std::to_string(kMaxEnumerationCap) + "]");

    // All inputs are loaded and validated before any computation.
    const Instance inst = load_instance(cfg.instance_path);
    std::vector<double> demand;
    if (cfg.subcommand == "schedule") {
      if (cfg.demand_path.empty()) throw ValidationError("schedule requires --demand");
      demand = load_demand(cfg.demand_path, inst.network);
    }

    if (cfg.subcommand == "solve") return cmd_solve(cfg, inst, out);
    if (cfg.subcommand == "compare") return cmd_compare(cfg, inst, out);
    if (cfg.subcommand == "inspect") return cmd_inspect(cfg, inst, out);
    if (cfg.subcommand == "schedule") return cmd_schedule(cfg, inst, demand, out);
    throw ValidationError("unknown subcommand \"" + cfg.subcommand + "\"");
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kValidation;
  } catch (const EnumerationError& e) {
    err << "error: " << e.what() << '\n';
    return kSolver;
  } catch (const SolverError& e) {
    err << "error: " << e.what() << '\n';
    return kSolver;
  } catch (const json::exception& e) {
    err << "error: " << e.what() << '\n';
    return kValidation;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kValidation;
  }
}

}  // namespace wnc::cli
