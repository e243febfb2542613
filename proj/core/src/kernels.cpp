#include "combwalk/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <string>

#include "combwalk/error.hpp"
#include "combwalk/io_format.hpp"
#include "laplacian.hpp"

namespace combwalk {

std::string_view to_string(Normalization n) noexcept {
  return n == Normalization::probability ? "probability" : "deg-normalized";
}

std::optional<Normalization> parse_normalization(std::string_view text) noexcept {
  if (text == "probability") return Normalization::probability;
  if (text == "deg-normalized") return Normalization::degree_normalized;
  return std::nullopt;
}

namespace {

constexpr std::uint32_t kNone = 0xffffffffu;

// Forward evolution of P_x(X_t = ., t < T_A). Vertices are relabelled in
// BFS order from the source so step t only touches the distance-(t+1) ball.
class Evolver {
 public:
  Evolver(const Graph& g, VertexId source, std::span<const char> inside) : g_(g), local_(g.vertex_count(), kNone) {
    auto in = [&](VertexId v) { return inside.empty() || inside[v] != 0; };
    if (!in(source)) {
      outside_start_ = true;
      return;
    }
    order_.push_back(source);
    local_[source] = 0;
    std::vector<std::uint32_t> dist{0};
    for (std::size_t head = 0; head < order_.size(); ++head) {
      const VertexId v = order_[head];
      for (VertexId u : g.neighbors(v)) {
        if (local_[u] == kNone && in(u)) {
          local_[u] = static_cast<std::uint32_t>(order_.size());
          order_.push_back(u);
          dist.push_back(dist[head] + 1);
        }
      }
    }
    for (std::size_t i = 0; i < order_.size(); ++i) {
      if (dist[i] >= layer_end_.size()) layer_end_.resize(dist[i] + 1, 0);
      layer_end_[dist[i]] = i + 1;
    }
    const std::size_t n = order_.size();
    nb_offsets_.assign(n + 1, 0);
    inv_deg_.resize(n);
    out_count_.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      const VertexId v = order_[i];
      inv_deg_[i] = 1.0 / static_cast<double>(g.degree(v));
      for (VertexId u : g.neighbors(v)) {
        if (local_[u] != kNone) {
          nb_.push_back(local_[u]);
        } else {
          out_count_[i] += 1.0;
          min_outside_degree_ = std::min(min_outside_degree_, g.degree(u));
        }
      }
      nb_offsets_[i + 1] = nb_.size();
    }
    cur_.assign(n, 0.0);
    next_.assign(n, 0.0);
    w_.assign(n, 0.0);
    cur_[0] = 1.0;
  }

  bool outside_start() const noexcept { return outside_start_; }
  std::size_t time() const noexcept { return t_; }
  double lost_total() const noexcept { return lost_total_; }
  double lost_last() const noexcept { return lost_last_; }
  /// Smallest degree among vertices just outside the domain.
  std::size_t min_outside_degree() const noexcept { return min_outside_degree_; }

  void step() {
    if (outside_start_) {
      ++t_;
      lost_last_ = 0.0;
      return;
    }
    const std::size_t active = layer(t_);
    const std::size_t reach = layer(t_ + 1);
    double lost = 0.0;
    for (std::size_t i = 0; i < active; ++i) {
      w_[i] = cur_[i] * inv_deg_[i];
      lost += w_[i] * out_count_[i];
    }
    for (std::size_t y = 0; y < reach; ++y) {
      double s = 0.0;
      for (std::size_t j = nb_offsets_[y]; j < nb_offsets_[y + 1]; ++j) s += w_[nb_[j]];
      next_[y] = s;
    }
    cur_.swap(next_);
    ++t_;
    lost_last_ = lost;
    lost_total_ += lost;
  }

  double at(VertexId v) const noexcept {
    if (outside_start_) return 0.0;
    const auto i = local_[v];
    return i == kNone ? 0.0 : cur_[i];
  }

  void fill(std::vector<double>& row) const {
    row.assign(g_.vertex_count(), 0.0);
    if (outside_start_) return;
    const std::size_t n = layer(t_);
    for (std::size_t i = 0; i < n; ++i) row[order_[i]] = cur_[i];
  }

  template <class Fn>
  void for_each_active(Fn&& fn) const {
    if (outside_start_) return;
    const std::size_t n = layer(t_);
    for (std::size_t i = 0; i < n; ++i) fn(order_[i], cur_[i]);
  }

 private:
  std::size_t layer(std::size_t d) const noexcept {
    return d < layer_end_.size() ? layer_end_[d] : order_.size();
  }

  const Graph& g_;
  std::vector<VertexId> order_;
  std::vector<std::uint32_t> local_;
  std::vector<std::size_t> layer_end_;
  std::vector<std::size_t> nb_offsets_;
  std::vector<std::uint32_t> nb_;
  std::vector<double> inv_deg_, out_count_, cur_, next_, w_;
  std::size_t t_ = 0;
  double lost_total_ = 0.0;
  double lost_last_ = 0.0;
  bool outside_start_ = false;
  std::size_t min_outside_degree_ = std::numeric_limits<std::size_t>::max();
};

// Re-entry bound: mass killed at y at time s returns to x by time t with
// probability P_y(X_{t-s} = x) = deg(x)/deg(y) P_x(X_{t-s} = y)
// <= deg(x)/deg(y) P_x(T_A <= t-s). Returns sum_s lost_s * cum_{t-s}.
std::vector<double> reentry_convolution(const std::vector<double>& lost_step) {
  const std::size_t n = lost_step.size();
  std::vector<double> cum(n, 0.0), out(n, 0.0);
  for (std::size_t s = 1; s < n; ++s) cum[s] = cum[s - 1] + lost_step[s];
  for (std::size_t t = 1; t < n; ++t) {
    double c = 0.0;
    for (std::size_t s = 1; s <= t; ++s) c += lost_step[s] * cum[t - s];
    out[t] = c;
  }
  return out;
}

void check_vertex(const Graph& g, VertexId v) {
  if (v >= g.vertex_count()) throw Error(Errc::bad_parameter, "vertex " + std::to_string(v) + " out of range");
}

void normalise(const Graph& g, std::vector<double>& row, Normalization n) {
  if (n == Normalization::probability) return;
  for (VertexId v = 0; v < row.size(); ++v) row[v] /= static_cast<double>(g.degree(v));
}

void check_horizon(const CombGraph& comb, VertexId x, std::size_t t) {
  check_vertex(comb.graph(), x);
  const std::size_t radius = comb.truncation_radius(x);
  if (t > radius) {
    throw Error(Errc::horizon_exceeds_truncation,
                "horizon " + std::to_string(t) + " exceeds truncation radius " + std::to_string(radius));
  }
}

// Vertices of A from which no exit is reachable make (D - Adj)_A singular.
void check_exits(const Graph& g, std::span<const VertexId> a, const std::vector<char>& in_a) {
  std::vector<VertexId> frontier;
  std::vector<char> seen(g.vertex_count(), 0);
  for (VertexId v : a) {
    for (VertexId u : g.neighbors(v)) {
      if (!in_a[u]) {
        if (!seen[v]) frontier.push_back(v);
        seen[v] = 1;
        break;
      }
    }
  }
  for (std::size_t head = 0; head < frontier.size(); ++head) {
    for (VertexId u : g.neighbors(frontier[head])) {
      if (in_a[u] && !seen[u]) {
        seen[u] = 1;
        frontier.push_back(u);
      }
    }
  }
  for (VertexId v : a) {
    if (!seen[v]) {
      throw Error(Errc::divergent, "walk from vertex " + std::to_string(v) + " never leaves the domain");
    }
  }
}

std::vector<char> membership(const Graph& g, std::span<const VertexId> a) {
  std::vector<char> in(g.vertex_count(), 0);
  for (VertexId v : a) {
    check_vertex(g, v);
    in[v] = 1;
  }
  return in;
}

std::vector<VertexId> unique_sorted(std::span<const VertexId> a) {
  std::vector<VertexId> out(a.begin(), a.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

std::vector<double> heat_kernel_row(const Graph& g, VertexId x, std::size_t t, Normalization n) {
  check_vertex(g, x);
  Evolver ev(g, x, {});
  for (std::size_t s = 0; s < t; ++s) ev.step();
  std::vector<double> row;
  ev.fill(row);
  normalise(g, row, n);
  return row;
}

KernelTable heat_kernel_table(const Graph& g, VertexId x, std::size_t horizon, Normalization n) {
  check_vertex(g, x);
  KernelTable table;
  table.source = x;
  table.horizon = horizon;
  table.normalization = n;
  table.rows.resize(horizon + 1);
  Evolver ev(g, x, {});
  for (std::size_t s = 0; s <= horizon; ++s) {
    if (s > 0) ev.step();
    ev.fill(table.rows[s]);
    normalise(g, table.rows[s], n);
  }
  return table;
}

std::vector<double> heat_kernel_row(const CombGraph& comb, VertexId x, std::size_t t, Normalization n) {
  check_horizon(comb, x, t);
  return heat_kernel_row(comb.graph(), x, t, n);
}

KernelTable heat_kernel_table(const CombGraph& comb, VertexId x, std::size_t horizon, Normalization n) {
  check_horizon(comb, x, horizon);
  auto table = heat_kernel_table(comb.graph(), x, horizon, n);
  table.truncation_radius = comb.truncation_radius(x);
  return table;
}

std::vector<double> return_probabilities(const Graph& g, VertexId x, std::size_t t) {
  check_vertex(g, x);
  Evolver ev(g, x, {});
  std::vector<double> out(t + 1);
  out[0] = 1.0;
  for (std::size_t s = 1; s <= t; ++s) {
    ev.step();
    out[s] = ev.at(x);
  }
  return out;
}

KilledEvolution killed_evolution(const Graph& g, VertexId x, std::span<const char> inside, std::size_t horizon) {
  check_vertex(g, x);
  if (!inside.empty() && inside.size() != g.vertex_count()) {
    throw Error(Errc::bad_parameter, "inside mask size does not match graph");
  }
  KilledEvolution out;
  out.rows.resize(horizon + 1);
  out.lost.resize(horizon + 1);
  Evolver ev(g, x, inside);
  for (std::size_t s = 0; s <= horizon; ++s) {
    if (s > 0) ev.step();
    ev.fill(out.rows[s]);
    out.lost[s] = ev.outside_start() ? 1.0 : ev.lost_total();
  }
  return out;
}

ExitTimeLaw exit_time_law(const Graph& g, VertexId x, std::span<const char> inside, std::size_t horizon) {
  check_vertex(g, x);
  if (!inside.empty() && inside.size() != g.vertex_count()) {
    throw Error(Errc::bad_parameter, "inside mask size does not match graph");
  }
  ExitTimeLaw law;
  law.pmf.assign(horizon + 1, 0.0);
  Evolver ev(g, x, inside);
  if (ev.outside_start()) {
    law.pmf[0] = 1.0;
    return law;
  }
  for (std::size_t s = 1; s <= horizon; ++s) {
    ev.step();
    law.pmf[s] = ev.lost_last();
  }
  law.tail = std::max(0.0, 1.0 - ev.lost_total());
  return law;
}

ExitTimeLaw ball_exit_law(const BaseGraph& base, VertexId x, std::size_t k, std::size_t horizon) {
  const Graph& g = base.graph();
  check_vertex(g, x);
  const std::size_t trunc = base.truncation_radius(x);
  if (trunc != kUnreachable && k >= trunc) {
    throw Error(Errc::ball_exceeds_truncation,
                "ball radius " + std::to_string(k) + " reaches the truncation at " + std::to_string(trunc));
  }
  std::vector<char> inside(g.vertex_count(), 0);
  for (VertexId v : ball(g, x, k)) inside[v] = 1;
  return exit_time_law(g, x, inside, horizon);
}

double killed_green(const Graph& g, std::span<const VertexId> a, VertexId x, VertexId y,
                    const SolverOptions& options) {
  check_vertex(g, x);
  check_vertex(g, y);
  if (a.empty()) return 0.0;
  const auto dom = unique_sorted(a);
  const auto in = membership(g, dom);
  if (!in[x] || !in[y]) return 0.0;
  check_exits(g, dom, in);
  detail::DirichletLaplacian lap(g, dom, options);
  Eigen::VectorXd e = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(dom.size()));
  e[lap.local(y)] = 1.0;
  return lap.solve(e)[lap.local(x)];
}

std::vector<double> killed_green_diagonal(const Graph& g, std::span<const VertexId> a, const SolverOptions& options) {
  if (a.empty()) return {};
  const auto dom = unique_sorted(a);
  const auto in = membership(g, dom);
  check_exits(g, dom, in);
  detail::DirichletLaplacian lap(g, dom, options);
  const Eigen::VectorXd diag = lap.inverse_diagonal();
  std::vector<double> out;
  out.reserve(a.size());
  for (VertexId v : a) out.push_back(diag[lap.local(v)]);
  return out;
}

double truncated_green(const Graph& g, VertexId x, VertexId y, std::size_t a, std::size_t b) {
  if (a > b) throw Error(Errc::bad_range, "a = " + std::to_string(a) + " exceeds b = " + std::to_string(b));
  check_vertex(g, x);
  check_vertex(g, y);
  Evolver ev(g, x, {});
  double sum = 0.0;
  for (std::size_t s = 0; s <= b; ++s) {
    if (s > 0) ev.step();
    if (s >= a) sum += ev.at(y);
  }
  return sum / static_cast<double>(g.degree(y));
}

double truncated_green(const CombGraph& comb, VertexId x, VertexId y, std::size_t a, std::size_t b) {
  if (a > b) throw Error(Errc::bad_range, "a = " + std::to_string(a) + " exceeds b = " + std::to_string(b));
  check_horizon(comb, x, b);
  return truncated_green(comb.graph(), x, y, a, b);
}

GreenRatio green_criterion_ratio(const CombGraph& comb, std::size_t r, const SolverOptions& options) {
  const BaseGraph& base = comb.base();
  const VertexId o = comb.origin();
  const std::size_t trunc = base.truncation_radius(o);
  if (trunc != kUnreachable && r >= trunc) {
    throw Error(Errc::ball_exceeds_truncation,
                "D_r with r = " + std::to_string(r) + " reaches the truncation at " + std::to_string(trunc));
  }
  const auto dom = ball(base.graph(), o, r);
  const auto in = membership(base.graph(), dom);
  check_exits(base.graph(), dom, in);
  detail::DirichletLaplacian lap(base.graph(), dom, options);
  const Eigen::VectorXd diag = lap.inverse_diagonal();

  GreenRatio out;
  out.origin_green = diag[lap.local(o)];
  double best = -1.0;
  for (VertexId v : dom) {
    const double tip = static_cast<double>(comb.tooth_height(v)) + diag[lap.local(v)];
    if (tip > best) {
      best = tip;
      out.argmax_base = v;
      out.argmax_height = comb.tooth_height(v);
    }
  }
  out.ratio = best / out.origin_green;
  return out;
}

double occupation_second_moment(const Graph& g, VertexId z, std::size_t t) {
  const auto p = return_probabilities(g, z, t);
  // E[U] = sum_s p_s; E[U^2] = E[U] + 2 sum_{s<=t} p_s sum_{r=1}^{t-s} p_r.
  std::vector<double> partial(t + 1, 0.0);
  for (std::size_t k = 1; k <= t; ++k) partial[k] = partial[k - 1] + p[k];
  double first = 0.0;
  double cross = 0.0;
  for (std::size_t s = 0; s <= t; ++s) {
    first += p[s];
    cross += p[s] * partial[t - s];
  }
  return first + 2.0 * cross;
}

double occupation_second_moment(const BaseGraph& base, VertexId z, std::size_t t) {
  check_vertex(base.graph(), z);
  const std::size_t trunc = base.truncation_radius(z);
  if (t > trunc) {
    throw Error(Errc::horizon_exceeds_truncation,
                "horizon " + std::to_string(t) + " exceeds truncation radius " + std::to_string(trunc));
  }
  return occupation_second_moment(base.graph(), z, t);
}

HittingLaw segment_hitting_law(std::uint64_t m, std::uint64_t h, std::size_t horizon, bool with_mean) {
  if (h > m) throw Error(Errc::bad_height, "start " + std::to_string(h) + " above tip " + std::to_string(m));
  HittingLaw law;
  law.pmf.assign(horizon + 1, 0.0);
  if (with_mean) law.mean = static_cast<double>(h) * static_cast<double>(2 * m - h);
  if (h == 0) {
    law.pmf[0] = 1.0;
    return law;
  }
  // cur[i] = P(X_s = i, s < H_0), i = 1..m; the walk needs i steps to reach 0.
  std::vector<double> cur(m + 1, 0.0), next(m + 1, 0.0);
  cur[h] = 1.0;
  std::uint64_t lo = h, hi = h;
  double absorbed = 0.0;
  for (std::size_t s = 1; s <= horizon; ++s) {
    const std::uint64_t nlo = lo > 1 ? lo - 1 : 0;
    const std::uint64_t nhi = std::min<std::uint64_t>(m, hi + 1);
    for (std::uint64_t i = nlo; i <= nhi; ++i) next[i] = 0.0;
    for (std::uint64_t i = lo; i <= hi; ++i) {
      const double mass = cur[i];
      if (mass == 0.0) continue;
      if (i == m) {
        next[m - 1] += mass;
      } else {
        next[i - 1] += 0.5 * mass;
        next[i + 1] += 0.5 * mass;
      }
    }
    law.pmf[s] = next[0];
    absorbed += next[0];
    next[0] = 0.0;
    for (std::uint64_t i = lo; i <= hi; ++i) cur[i] = 0.0;
    cur.swap(next);
    lo = std::max<std::uint64_t>(1, nlo);
    hi = nhi;
  }
  law.tail = std::max(0.0, 1.0 - absorbed);
  return law;
}

double IntervalExitLaw::total_low() const {
  double s = 0.0;
  for (double v : low) s += v;
  return s;
}

double IntervalExitLaw::total_high() const {
  double s = 0.0;
  for (double v : high) s += v;
  return s;
}

IntervalExitLaw interval_exit_law(std::uint64_t m, std::uint64_t h, std::size_t horizon) {
  if (h > m) throw Error(Errc::bad_height, "start " + std::to_string(h) + " outside [0, " + std::to_string(m) + "]");
  IntervalExitLaw law;
  law.low.assign(horizon + 1, 0.0);
  law.high.assign(horizon + 1, 0.0);
  // Index i + 1 holds position i; slots 0 and m + 2 are the exits.
  std::vector<double> cur(m + 3, 0.0), next(m + 3, 0.0);
  cur[h + 1] = 1.0;
  double out = 0.0;
  for (std::size_t s = 1; s <= horizon; ++s) {
    std::fill(next.begin(), next.end(), 0.0);
    for (std::uint64_t i = 1; i <= m + 1; ++i) {
      if (cur[i] == 0.0) continue;
      next[i - 1] += 0.5 * cur[i];
      next[i + 1] += 0.5 * cur[i];
    }
    law.low[s] = next[0];
    law.high[s] = next[m + 2];
    out += next[0] + next[m + 2];
    next[0] = next[m + 2] = 0.0;
    cur.swap(next);
  }
  law.tail = std::max(0.0, 1.0 - out);
  return law;
}

std::vector<double> expected_hitting_times(const Graph& g, std::span<const VertexId> targets,
                                           const SolverOptions& options) {
  if (targets.empty()) throw Error(Errc::bad_parameter, "target set is empty");
  const auto in_target = membership(g, targets);
  std::vector<VertexId> free;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (!in_target[v]) free.push_back(v);
  }
  std::vector<double> out(g.vertex_count(), 0.0);
  if (free.empty()) return out;
  std::vector<char> in_free(g.vertex_count(), 0);
  for (VertexId v : free) in_free[v] = 1;
  check_exits(g, free, in_free);
  // deg(x) h(x) - sum_{y ~ x, y free} h(y) = deg(x).
  detail::DirichletLaplacian lap(g, free, options);
  Eigen::VectorXd rhs(static_cast<Eigen::Index>(free.size()));
  for (std::size_t i = 0; i < free.size(); ++i) rhs[static_cast<Eigen::Index>(i)] = static_cast<double>(g.degree(free[i]));
  const Eigen::VectorXd hsol = lap.solve(rhs);
  for (std::size_t i = 0; i < free.size(); ++i) out[free[i]] = hsol[static_cast<Eigen::Index>(i)];
  return out;
}

double expected_collisions_region(const Graph& g, std::span<const VertexId> region, std::size_t horizon,
                                  VertexId start) {
  check_vertex(g, start);
  if (region.empty()) return 0.0;
  const auto dom = unique_sorted(region);
  for (VertexId v : dom) check_vertex(g, v);
  Evolver ev(g, start, {});
  double sum = 0.0;
  for (std::size_t s = 0; s <= horizon; ++s) {
    if (s > 0) ev.step();
    for (VertexId v : dom) {
      const double p = ev.at(v);
      sum += p * p;
    }
  }
  return sum;
}

double expected_collisions_region(const CombGraph& comb, std::span<const VertexId> region, std::size_t horizon,
                                  VertexId start) {
  check_horizon(comb, start, horizon);
  return expected_collisions_region(comb.graph(), region, horizon, start);
}

namespace {

void check_inside(const CombGraph& comb, std::span<const char> inside) {
  if (inside.size() != comb.vertex_count()) throw Error(Errc::bad_parameter, "inside mask size does not match comb");
  for (VertexId v = 0; v < inside.size(); ++v) {
    if (inside[v] && comb.truncation_radius(v) == 0) {
      throw Error(Errc::horizon_exceeds_truncation,
                  "killing domain contains truncation-boundary vertex " + std::to_string(v));
    }
  }
}

}  // namespace

DiagonalBounds heat_kernel_diagonal_bounds(const CombGraph& comb, VertexId x, std::span<const char> inside,
                                           std::size_t horizon, Normalization n) {
  check_vertex(comb.graph(), x);
  check_inside(comb, inside);
  const double deg_x = static_cast<double>(comb.degree(x));
  const double scale = n == Normalization::probability ? 1.0 : 1.0 / deg_x;
  DiagonalBounds out;
  out.lower.resize(horizon + 1);
  out.upper.resize(horizon + 1);
  out.lost.resize(horizon + 1);
  Evolver ev(comb.graph(), x, inside);
  if (ev.outside_start()) {
    // No killed information at all; fall back to the trivial bounds.
    for (std::size_t s = 0; s <= horizon; ++s) {
      out.lost[s] = 1.0;
      out.upper[s] = scale;
    }
    return out;
  }
  std::vector<double> killed(horizon + 1), step_loss(horizon + 1, 0.0);
  for (std::size_t s = 0; s <= horizon; ++s) {
    if (s > 0) {
      ev.step();
      step_loss[s] = ev.lost_last();
    }
    killed[s] = ev.at(x);
    out.lost[s] = ev.lost_total();
  }
  const auto conv = reentry_convolution(step_loss);
  const double ratio = ev.min_outside_degree() == std::numeric_limits<std::size_t>::max()
                           ? 0.0
                           : deg_x / static_cast<double>(ev.min_outside_degree());
  for (std::size_t s = 0; s <= horizon; ++s) {
    const double extra = std::min(out.lost[s], ratio * conv[s]);
    out.lower[s] = killed[s] * scale;
    out.upper[s] = std::min(1.0, killed[s] + extra) * scale;
  }
  return out;
}

CollisionBounds expected_collisions_region_bounds(const CombGraph& comb, std::span<const VertexId> region,
                                                  std::size_t horizon, VertexId start, std::span<const char> inside) {
  check_vertex(comb.graph(), start);
  check_inside(comb, inside);
  CollisionBounds out;
  if (region.empty()) return out;
  const auto dom = unique_sorted(region);
  for (VertexId v : dom) check_vertex(comb.graph(), v);
  Evolver ev(comb.graph(), start, inside);
  if (ev.outside_start()) throw Error(Errc::bad_parameter, "start lies outside the killing domain");
  std::vector<double> sq(horizon + 1), mx(horizon + 1), lost(horizon + 1);
  for (std::size_t s = 0; s <= horizon; ++s) {
    if (s > 0) ev.step();
    lost[s] = ev.lost_total();
    double q = 0.0, m = 0.0;
    for (VertexId v : dom) {
      const double p = ev.at(v);
      q += p * p;
      m = std::max(m, p);
    }
    sq[s] = q;
    mx[s] = m;
  }
  // P = P_killed + e with e >= 0 and sum e <= lost.
  for (std::size_t s = 0; s <= horizon; ++s) {
    out.lower += sq[s];
    out.upper += sq[s] + 2.0 * lost[s] * mx[s] + lost[s] * lost[s];
  }
  out.lost = lost[horizon];
  return out;
}

void write_kernel_csv(std::ostream& out, const KernelTable& table) {
  out << "t,vertexId,value,normalization\n";
  const auto tag = to_string(table.normalization);
  for (std::size_t t = 0; t < table.rows.size(); ++t) {
    for (std::size_t v = 0; v < table.rows[t].size(); ++v) {
      out << t << ',' << v << ',' << format_double(table.rows[t][v]) << ',' << tag << '\n';
    }
  }
}

}  // namespace combwalk
