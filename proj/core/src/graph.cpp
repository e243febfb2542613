#include "combwalk/graph.hpp"

#include <algorithm>
#include <deque>
#include <string>

#include "combwalk/error.hpp"

namespace combwalk {

Graph Graph::from_edges(std::size_t vertex_count, std::span<const Edge> edges) {
  if (vertex_count >= std::numeric_limits<VertexId>::max()) {
    throw Error(Errc::bad_parameter, "vertex count exceeds id range");
  }
  Graph g;
  std::vector<std::size_t> degree(vertex_count, 0);
  for (const auto& [u, v] : edges) {
    if (u >= vertex_count || v >= vertex_count) {
      throw Error(Errc::bad_parameter, "edge endpoint out of range");
    }
    if (u == v) {
      throw Error(Errc::bad_parameter, "self-loop at vertex " + std::to_string(u));
    }
    ++degree[u];
    ++degree[v];
  }
  g.offsets_.assign(vertex_count + 1, 0);
  for (std::size_t v = 0; v < vertex_count; ++v) g.offsets_[v + 1] = g.offsets_[v] + degree[v];
  g.targets_.resize(g.offsets_.back());
  std::vector<std::size_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
  for (const auto& [u, v] : edges) {
    g.targets_[fill[u]++] = v;
    g.targets_[fill[v]++] = u;
  }
  for (std::size_t v = 0; v < vertex_count; ++v) {
    auto first = g.targets_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v]);
    auto last = g.targets_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v + 1]);
    std::sort(first, last);
    if (std::adjacent_find(first, last) != last) {
      throw Error(Errc::bad_parameter, "duplicate edge at vertex " + std::to_string(v));
    }
  }
  g.reverse_.resize(g.targets_.size());
  for (std::size_t v = 0; v < vertex_count; ++v) {
    for (std::size_t s = g.offsets_[v]; s < g.offsets_[v + 1]; ++s) {
      const VertexId u = g.targets_[s];
      auto first = g.targets_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[u]);
      auto last = g.targets_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[u + 1]);
      auto it = std::lower_bound(first, last, static_cast<VertexId>(v));
      g.reverse_[s] = static_cast<std::size_t>(it - g.targets_.begin());
    }
  }
  return g;
}

bool Graph::adjacent(VertexId u, VertexId v) const noexcept {
  auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for (VertexId v = 0; v < vertex_count(); ++v) {
    for (VertexId u : neighbors(v)) {
      if (v < u) out.emplace_back(v, u);
    }
  }
  return out;
}

std::vector<std::size_t> bfs_distances(const Graph& g, std::span<const VertexId> sources) {
  std::vector<std::size_t> dist(g.vertex_count(), kUnreachable);
  std::deque<VertexId> queue;
  for (VertexId s : sources) {
    if (dist[s] != 0) {
      dist[s] = 0;
      queue.push_back(s);
    }
  }
  while (!queue.empty()) {
    const VertexId v = queue.front();
    queue.pop_front();
    for (VertexId u : g.neighbors(v)) {
      if (dist[u] == kUnreachable) {
        dist[u] = dist[v] + 1;
        queue.push_back(u);
      }
    }
  }
  return dist;
}

std::vector<std::size_t> bfs_distances(const Graph& g, VertexId source) {
  const VertexId sources[] = {source};
  return bfs_distances(g, sources);
}

std::vector<VertexId> ball(const Graph& g, VertexId v, std::size_t radius) {
  std::vector<VertexId> out{v};
  std::vector<std::size_t> dist(g.vertex_count(), kUnreachable);
  dist[v] = 0;
  for (std::size_t head = 0; head < out.size(); ++head) {
    const VertexId x = out[head];
    if (dist[x] == radius) continue;
    for (VertexId u : g.neighbors(x)) {
      if (dist[u] == kUnreachable) {
        dist[u] = dist[x] + 1;
        out.push_back(u);
      }
    }
  }
  return out;
}

std::vector<std::uint32_t> component_labels(const Graph& g) {
  constexpr auto kNone = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> label(g.vertex_count(), kNone);
  std::vector<VertexId> stack;
  std::uint32_t next = 0;
  for (VertexId s = 0; s < g.vertex_count(); ++s) {
    if (label[s] != kNone) continue;
    label[s] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      const VertexId v = stack.back();
      stack.pop_back();
      for (VertexId u : g.neighbors(v)) {
        if (label[u] == kNone) {
          label[u] = next;
          stack.push_back(u);
        }
      }
    }
    ++next;
  }
  return label;
}

bool is_connected(const Graph& g) {
  if (g.vertex_count() == 0) return false;
  auto d = bfs_distances(g, VertexId{0});
  return std::none_of(d.begin(), d.end(), [](std::size_t x) { return x == kUnreachable; });
}

}  // namespace combwalk
