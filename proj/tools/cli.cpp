#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "combwalk/base_graph.hpp"
#include "combwalk/collisions.hpp"
#include "combwalk/comb_graph.hpp"
#include "combwalk/error.hpp"
#include "combwalk/io_format.hpp"
#include "combwalk/kernels.hpp"
#include "combwalk/parallel.hpp"
#include "combwalk/percolation.hpp"
#include "combwalk/resistance.hpp"
#include "combwalk/rng.hpp"
#include "combwalk/stats.hpp"
#include "combwalk/walker.hpp"

#ifndef COMBWALK_VERSION
#define COMBWALK_VERSION "unknown"
#endif

namespace combwalk::cli {

using nlohmann::json;
namespace fs = std::filesystem;

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

namespace {

const std::set<std::string> kCommands{"build", "resistance", "kernel", "walk", "collide", "percolation", "experiment"};

void check_keys(const json& obj, const std::string& path, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) throw ValidationError(path.empty() ? "config" : path, "expected an object");
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    const bool known = std::any_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; });
    if (!known) throw ValidationError(path + key, "unknown key");
  }
}

bool non_negative_integer(const json& v) {
  return v.is_number_unsigned() || (v.is_number_integer() && v.get<std::int64_t>() >= 0);
}

std::uint64_t get_uint(const json& obj, const char* key, const std::string& path, std::uint64_t lo,
                       std::uint64_t hi = UINT64_MAX) {
  const auto& v = obj.at(key);
  if (!non_negative_integer(v)) {
    throw ValidationError(path + key, "expected a non-negative integer");
  }
  const auto x = v.get<std::uint64_t>();
  if (x < lo || x > hi) {
    throw ValidationError(path + key, "must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  return x;
}

double get_double(const json& obj, const char* key, const std::string& path) {
  const auto& v = obj.at(key);
  if (!v.is_number()) throw ValidationError(path + key, "expected a number");
  return v.get<double>();
}

std::string get_choice(const json& obj, const char* key, const std::string& path,
                       std::initializer_list<const char*> choices) {
  const auto& v = obj.at(key);
  if (!v.is_string()) throw ValidationError(path + key, "expected a string");
  const auto s = v.get<std::string>();
  if (std::none_of(choices.begin(), choices.end(), [&](const char* c) { return s == c; })) {
    throw ValidationError(path + key, "unsupported value '" + s + "'");
  }
  return s;
}

bool needs_graph(const std::string& command) {
  return command != "experiment" && command != "percolation";
}

}  // namespace

RunConfig parse_config(const json& j) {
  check_keys(j, "", {"command", "seed", "graph", "profile", "source", "horizon", "radii", "trials", "threads",
                     "normalization", "truncation", "gammas", "dimension"});
  RunConfig c;
  if (!j.contains("command")) throw ValidationError("command", "missing");
  c.command = get_choice(j, "command", "", {"build", "resistance", "kernel", "walk", "collide", "percolation",
                                             "experiment"});
  if (j.contains("seed")) c.seed = get_uint(j, "seed", "", 0);
  if (j.contains("graph")) {
    const auto& g = j["graph"];
    check_keys(g, "graph.", {"kind", "halfWidth", "level", "p", "maxAttempts"});
    if (g.contains("kind")) c.graph.kind = get_choice(g, "kind", "graph.", {"z_segment", "z2_box", "gasket", "percolation"});
    if (g.contains("halfWidth")) c.graph.half_width = static_cast<std::int32_t>(get_uint(g, "halfWidth", "graph.", 1, 1u << 14));
    if (g.contains("level")) c.graph.level = static_cast<std::uint32_t>(get_uint(g, "level", "graph.", 0, 12));
    if (g.contains("p")) {
      c.graph.p = get_double(g, "p", "graph.");
      if (!(c.graph.p >= 0.0 && c.graph.p <= 1.0)) throw ValidationError("graph.p", "must lie in [0, 1]");
    }
    if (g.contains("maxAttempts")) {
      c.graph.max_attempts = static_cast<std::uint32_t>(get_uint(g, "maxAttempts", "graph.", 1, 1u << 20));
    }
  } else if (needs_graph(c.command) || c.command == "percolation") {
    throw ValidationError("graph", "missing");
  }
  if (j.contains("profile")) {
    const auto& p = j["profile"];
    check_keys(p, "profile.", {"family", "gamma", "metric"});
    ProfileSpec ps;
    if (p.contains("family")) ps.family = get_choice(p, "family", "profile.", {"polynomial", "logarithmic"});
    if (p.contains("gamma")) {
      ps.gamma = get_double(p, "gamma", "profile.");
      if (!(ps.gamma > 0.0)) throw ValidationError("profile.gamma", "must be positive");
    }
    if (p.contains("metric")) ps.metric = get_choice(p, "metric", "profile.", {"graph", "sup"});
    c.profile = ps;
  }
  if (j.contains("source")) {
    const auto& s = j["source"];
    check_keys(s, "source.", {"x", "y", "h"});
    SourceSpec src;
    for (const char* key : {"x", "y"}) {
      if (!s.contains(key)) continue;
      if (!s[key].is_number_integer()) throw ValidationError(std::string("source.") + key, "expected an integer");
      (key[0] == 'x' ? src.x : src.y) = s[key].get<std::int32_t>();
    }
    if (s.contains("h")) src.h = static_cast<std::uint32_t>(get_uint(s, "h", "source.", 0, UINT32_MAX));
    c.source = src;
  }
  if (j.contains("horizon")) c.horizon = get_uint(j, "horizon", "", 0, std::uint64_t{1} << 32);
  if (j.contains("radii")) {
    if (!j["radii"].is_array()) throw ValidationError("radii", "expected an array");
    for (std::size_t i = 0; i < j["radii"].size(); ++i) {
      const auto& v = j["radii"][i];
      if (!non_negative_integer(v)) throw ValidationError("radii[" + std::to_string(i) + "]", "expected a non-negative integer");
      c.radii.push_back(v.get<std::uint64_t>());
    }
  }
  if (j.contains("trials")) c.trials = get_uint(j, "trials", "", 1, std::uint64_t{1} << 32);
  if (j.contains("threads")) c.threads = static_cast<std::uint32_t>(get_uint(j, "threads", "", 0, 1024));
  if (j.contains("normalization")) {
    c.normalization = get_choice(j, "normalization", "", {"probability", "deg-normalized"});
  }
  if (j.contains("truncation")) c.truncation = get_choice(j, "truncation", "", {"strict", "finite"});
  if (j.contains("gammas")) {
    if (!j["gammas"].is_array()) throw ValidationError("gammas", "expected an array");
    for (std::size_t i = 0; i < j["gammas"].size(); ++i) {
      const auto& v = j["gammas"][i];
      if (!v.is_number() || !(v.get<double>() > 0.0)) {
        throw ValidationError("gammas[" + std::to_string(i) + "]", "expected a positive number");
      }
      c.gammas.push_back(v.get<double>());
    }
  }
  if (j.contains("dimension")) c.dimension = static_cast<std::int32_t>(get_uint(j, "dimension", "", 1, 2));

  if (c.command == "experiment" && c.gammas.empty()) throw ValidationError("gammas", "must be nonempty");
  if ((c.command == "resistance" || c.command == "walk") && c.radii.empty()) {
    throw ValidationError("radii", "must be nonempty");
  }
  if ((c.command == "kernel" || c.command == "collide" || c.command == "experiment") && c.horizon == 0 &&
      !j.contains("horizon")) {
    throw ValidationError("horizon", "missing");
  }
  return c;
}

json to_json(const RunConfig& c) {
  json j;
  j["command"] = c.command;
  if (c.seed) j["seed"] = *c.seed;
  j["graph"] = {{"kind", c.graph.kind},
                {"halfWidth", c.graph.half_width},
                {"level", c.graph.level},
                {"p", c.graph.p},
                {"maxAttempts", c.graph.max_attempts}};
  if (c.profile) {
    j["profile"] = {{"family", c.profile->family}, {"gamma", c.profile->gamma}};
    if (!c.profile->metric.empty()) j["profile"]["metric"] = c.profile->metric;
  }
  if (c.source) j["source"] = {{"x", c.source->x}, {"y", c.source->y}, {"h", c.source->h}};
  j["horizon"] = c.horizon;
  j["radii"] = c.radii;
  j["trials"] = c.trials;
  j["threads"] = c.threads;
  j["normalization"] = c.normalization;
  j["truncation"] = c.truncation;
  j["gammas"] = c.gammas;
  j["dimension"] = c.dimension;
  return j;
}

namespace {

struct Artifacts {
  std::map<std::string, std::string> files;
  json manifest;
};

Metric resolve_metric(const RunConfig& c) {
  if (c.profile && !c.profile->metric.empty()) {
    return c.profile->metric == "sup" ? Metric::sup_norm : Metric::graph_distance;
  }
  return c.graph.kind == "gasket" ? Metric::graph_distance : Metric::sup_norm;
}

ProfileFamily resolve_family(const RunConfig& c) {
  return c.profile && c.profile->family == "polynomial" ? ProfileFamily::polynomial : ProfileFamily::logarithmic;
}

CombGraph build_comb(const RunConfig& c, std::uint64_t seed, json& meta) {
  std::optional<BaseGraph> base;
  if (c.graph.kind == "z_segment") {
    base = make_z_segment(c.graph.half_width);
  } else if (c.graph.kind == "z2_box") {
    base = make_z2_box(c.graph.half_width);
  } else if (c.graph.kind == "gasket") {
    base = make_gasket(c.graph.level);
  } else {
    auto cond = origin_cluster_conditioned(c.graph.half_width, c.graph.p, seed, c.graph.max_attempts);
    meta["percolation"] = {{"attempts", cond.attempts},
                           {"sampleSeed", cond.sample.seed},
                           {"conditioning", "origin in largest cluster of the box"}};
    base = std::move(cond.base);
  }
  if (!c.profile) {
    std::vector<std::uint32_t> zero(base->vertex_count(), 0);
    meta["profile"] = "none";
    return attach_teeth(std::move(*base), std::move(zero));
  }
  TeethProfile prof{resolve_family(c), c.profile->gamma, resolve_metric(c), {}};
  meta["profile"] = {{"family", std::string(to_string(prof.family))},
                     {"gamma", prof.gamma},
                     {"metric", std::string(to_string(prof.metric))},
                     {"logBase", "e"}};
  return attach_teeth(std::move(*base), prof);
}

VertexId resolve_source(const RunConfig& c, const CombGraph& comb) {
  if (!c.source) return comb.root();
  const auto& base = comb.base();
  if (!base.has_coords()) throw ValidationError("source", "base graph has no coordinates");
  const auto b = base.find(Coord{c.source->x, c.source->y});
  if (!b) throw ValidationError("source", "no base vertex at these coordinates");
  return comb.vertex(*b, c.source->h);
}

std::string csv_line(std::initializer_list<std::string> cells) {
  std::string s;
  bool first = true;
  for (const auto& c : cells) {
    if (!first) s += ',';
    s += c;
    first = false;
  }
  s += '\n';
  return s;
}

std::string num(double v) { return format_double(v); }
std::string num(std::uint64_t v) { return std::to_string(v); }

void cmd_build(const RunConfig& c, std::uint64_t seed, Artifacts& a) {
  auto comb = build_comb(c, seed, a.manifest);
  std::ostringstream g;
  write_comb_text(g, comb);
  a.files["comb.txt"] = g.str();
  std::string s = "vertices,edges,baseVertices,maxToothHeight,rootTruncationRadius\n";
  s += csv_line({num(comb.vertex_count()), num(comb.edge_count()), num(comb.base().vertex_count()),
                 num(std::uint64_t{comb.max_tooth_height()}), num(comb.truncation_radius(comb.root()))});
  a.files["summary.csv"] = s;
  a.manifest["truncationRadius"] = comb.truncation_radius(comb.root());
}

void cmd_resistance(const RunConfig& c, std::uint64_t seed, Artifacts& a) {
  auto comb = build_comb(c, seed, a.manifest);
  const auto& base = comb.base();
  const VertexId o = comb.root();
  const auto dist = bfs_distances(base.graph(), o);
  std::string s = "r,combResistance,baseResistance,greenRatio,originGreen\n";
  for (auto r : c.radii) {
    const auto ratio = green_criterion_ratio(comb, r);
    std::vector<VertexId> base_out, comb_out;
    for (VertexId v = 0; v < base.vertex_count(); ++v) {
      if (dist[v] > r) base_out.push_back(v);
    }
    for (VertexId v = 0; v < comb.vertex_count(); ++v) {
      if (dist[comb.base_of(v)] > r) comb_out.push_back(v);
    }
    const VertexId src[] = {o};
    const double rb = effective_resistance(base.graph(), src, base_out);
    const double rc = effective_resistance(comb.graph(), src, comb_out);
    s += csv_line({num(r), num(rc), num(rb), num(ratio.ratio), num(ratio.origin_green)});
  }
  a.files["resistance.csv"] = s;
  a.manifest["truncationRadius"] = base.truncation_radius(o);
  a.manifest["normalization"] = "deg-normalized";
}

void cmd_kernel(const RunConfig& c, std::uint64_t seed, Artifacts& a) {
  auto comb = build_comb(c, seed, a.manifest);
  const VertexId x = resolve_source(c, comb);
  const auto norm = *parse_normalization(c.normalization);
  const auto table = c.truncation == "finite" ? heat_kernel_table(comb.graph(), x, c.horizon, norm)
                                              : heat_kernel_table(comb, x, c.horizon, norm);
  std::ostringstream out;
  write_kernel_csv(out, table);
  a.files["kernel.csv"] = out.str();
  a.manifest["normalization"] = c.normalization;
  a.manifest["truncation"] = c.truncation;
  a.manifest["truncationRadius"] = comb.truncation_radius(x);
  a.manifest["source"] = x;
}

void cmd_walk(const RunConfig& c, std::uint64_t seed, Artifacts& a) {
  auto comb = build_comb(c, seed, a.manifest);
  const VertexId x = resolve_source(c, comb);
  std::string s = "k,trial,stopTime,endVertex,horizontalSteps\n";
  for (std::size_t i = 0; i < c.radii.size(); ++i) {
    const auto k = c.radii[i];
    const auto samples = exit_time_samples(comb, x, k, c.trials, hash_pair(seed, i), c.threads);
    for (std::size_t t = 0; t < samples.size(); ++t) {
      s += csv_line({num(k), num(std::uint64_t{t}), num(samples[t].exit_time),
                     samples[t].end_vertex ? num(std::uint64_t{*samples[t].end_vertex}) : "",
                     num(samples[t].horizontal_steps)});
    }
  }
  a.files["samples.csv"] = s;
  a.manifest["seeds"]["perRadius"] = "hash_pair(seed, radiusIndex), trial stream(perRadius, trial)";
  a.manifest["truncationRadius"] = comb.base().truncation_radius(comb.base_of(x));
}

void cmd_collide(const RunConfig& c, std::uint64_t seed, Artifacts& a) {
  auto comb = build_comb(c, seed, a.manifest);
  const VertexId x = resolve_source(c, comb);
  std::vector<CollisionRecord> recs(c.trials);
  parallel_for(c.trials, c.threads, [&](std::size_t i) {
    recs[i] = run_collision(comb, x, c.horizon, SeedPair{hash_pair(seed, 2 * i), hash_pair(seed, 2 * i + 1)});
  });
  std::string s = "trial,seedX,seedY,total,skeleton\n";
  std::map<std::pair<std::uint64_t, std::uint64_t>, std::uint64_t> cells;
  for (std::size_t i = 0; i < recs.size(); ++i) {
    s += csv_line({num(std::uint64_t{i}), num(recs[i].seeds.x), num(recs[i].seeds.y), num(recs[i].total),
                   num(recs[i].skeleton)});
    for (const auto& [key, n] : recs[i].cells) cells[key] += n;
  }
  a.files["collisions.csv"] = s;
  std::string r = "k,h,count\n";
  for (const auto& [key, n] : cells) r += csv_line({num(key.first), num(key.second), num(n)});
  a.files["regions.csv"] = r;
  a.manifest["truncationRadius"] = comb.truncation_radius(x);
  a.manifest["seeds"]["pairs"] = "trial i: (hash_pair(seed, 2i), hash_pair(seed, 2i+1))";
  a.manifest["collisionAtTimeZero"] = true;
}

void cmd_percolation(const RunConfig& c, std::uint64_t seed, Artifacts& a) {
  const auto sample = sample_bonds(c.graph.half_width, c.graph.p, seed);
  const auto summary = clusters(sample);
  std::ostringstream out;
  write_sample_text(out, sample);
  a.files["sample.txt"] = out.str();
  std::string s = "label,size\n";
  for (std::size_t i = 0; i < summary.sizes.size(); ++i) s += csv_line({num(std::uint64_t{i}), num(std::uint64_t{summary.sizes[i]})});
  a.files["clusters.csv"] = s;
  std::string m = "clusterCount,largestSize,originLabel,originSize,openBonds,openFraction\n";
  m += csv_line({num(summary.cluster_count), num(std::uint64_t{summary.largest_size}),
                 num(std::uint64_t{summary.origin_label}), num(std::uint64_t{summary.origin_size}),
                 num(summary.open_bonds),
                 num(static_cast<double>(summary.open_bonds) / static_cast<double>(sample.bond_count()))});
  a.files["summary.csv"] = m;
}

void cmd_experiment(const RunConfig& c, std::uint64_t seed, Artifacts& a) {
  LatticeCombSpec spec{c.dimension, resolve_family(c),
                       c.profile && c.profile->metric == "graph" ? Metric::graph_distance : Metric::sup_norm};
  const auto curve = collision_curve(spec, c.gammas, c.horizon, c.trials, seed, c.threads);
  std::ostringstream out;
  write_curve_csv(out, curve);
  a.files["curve.csv"] = out.str();
  std::string s = "gamma,windowStart,windowEnd,meanIncrement,ciLow,ciHigh,trials,seed\n";
  const std::size_t nc = curve.checkpoints.size();
  for (std::size_t g = 0; g < curve.gammas.size(); ++g) {
    for (std::size_t w = 1; w < nc; ++w) {
      std::vector<double> inc;
      for (const auto& trial : curve.samples[g]) inc.push_back(trial[w] - trial[w - 1]);
      const auto st = stats::summarize(inc);
      s += csv_line({num(curve.gammas[g]), num(curve.checkpoints[w - 1]), num(curve.checkpoints[w]), num(st.mean),
                     num(st.mean - st.ci95), num(st.mean + st.ci95), num(c.trials), num(seed)});
    }
  }
  a.files["increments.csv"] = s;
  a.manifest["lattice"] = {{"dimension", spec.dimension},
                           {"family", std::string(to_string(spec.family))},
                           {"metric", std::string(to_string(spec.metric))},
                           {"truncation", "none (implicit infinite comb)"}};
  a.manifest["seeds"]["pairs"] = "trial i: (hash_pair(seed, 2i), hash_pair(seed, 2i+1)), shared across gammas";
  a.manifest["ci"] = "normal 95%";
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, v);
  return buf;
}

}  // namespace

void execute(const RunConfig& config, const fs::path& out) {
  if (!config.seed) throw ValidationError("seed", "missing (set it in the config or pass --seed)");
  const std::uint64_t seed = *config.seed;
  Artifacts a;
  const json cfg = to_json(config);
  a.manifest["version"] = COMBWALK_VERSION;
  a.manifest["command"] = config.command;
  a.manifest["config"] = cfg;
  a.manifest["configHash"] = hex64(fnv1a(cfg.dump()));
  a.manifest["seeds"]["master"] = seed;
  a.manifest["seeds"]["streams"] = "xoshiro256** seeded from splitmix64(hash(master, index))";
  a.manifest["qTildeBand"] = "ceil(l/3) <= h <= floor(2l/3)";

  if (config.command == "build") cmd_build(config, seed, a);
  else if (config.command == "resistance") cmd_resistance(config, seed, a);
  else if (config.command == "kernel") cmd_kernel(config, seed, a);
  else if (config.command == "walk") cmd_walk(config, seed, a);
  else if (config.command == "collide") cmd_collide(config, seed, a);
  else if (config.command == "percolation") cmd_percolation(config, seed, a);
  else cmd_experiment(config, seed, a);

  json outputs = json::array();
  for (const auto& [name, body] : a.files) outputs.push_back(name);
  a.manifest["outputs"] = outputs;
  a.files["manifest.json"] = a.manifest.dump(2) + "\n";

  std::error_code ec;
  fs::create_directories(out, ec);
  std::vector<fs::path> written;
  try {
    for (const auto& [name, body] : a.files) {
      const fs::path p = out / name;
      std::ofstream f(p, std::ios::binary | std::ios::trunc);
      if (!f) throw Error(Errc::bad_parameter, "cannot write " + p.string());
      written.push_back(p);
      f << body;
      f.close();
      if (!f) throw Error(Errc::bad_parameter, "write failed for " + p.string());
    }
  } catch (...) {
    for (const auto& p : written) fs::remove(p, ec);
    throw;
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"combwalk: random walks and collisions on comb graphs"};
  std::string config_path, out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint32_t> threads;
  app.add_option("--config", config_path, "JSON run configuration")->required();
  app.add_option("--out", out_dir, "output directory")->required();
  app.add_option("--seed", seed, "master seed (overrides the config)");
  app.add_option("--threads", threads, "worker threads (overrides the config)");
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kValidation;
  }

  RunConfig config;
  try {
    std::ifstream f(config_path);
    if (!f) throw ValidationError("--config", "cannot open " + config_path);
    json j;
    try {
      j = json::parse(f);
    } catch (const json::parse_error& e) {
      throw ValidationError("--config", std::string("parse-error: ") + e.what());
    }
    config = parse_config(j);
    if (seed) config.seed = seed;
    if (threads) config.threads = *threads;
    execute(config, out_dir);
  } catch (const ValidationError& e) {
    err << "error: validation: " << e.what() << '\n';
    return kValidation;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.code() == Errc::bad_parameter ? kValidation : kRuntime;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kRuntime;
  }
  out << "wrote " << (fs::path(out_dir) / "manifest.json").string() << '\n';
  return kOk;
}

}  // namespace combwalk::cli
