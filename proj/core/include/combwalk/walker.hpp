#pragma once

#include <cmath>
#include <concepts>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "combwalk/comb_graph.hpp"
#include "combwalk/error.hpp"
#include "combwalk/graph.hpp"
#include "combwalk/lattice_comb.hpp"
#include "combwalk/rng.hpp"
#include "combwalk/stats.hpp"

namespace combwalk {

template <class G>
concept WalkGraph = requires(const G& g, const typename G::vertex_type& v, std::size_t i) {
  { g.degree(v) } -> std::convertible_to<std::size_t>;
  { g.neighbor(v, i) } -> std::convertible_to<typename G::vertex_type>;
};

template <class G>
concept CombLike = WalkGraph<G> && requires(const G& g, const typename G::vertex_type& v) {
  typename G::base_type;
  { g.base_of(v) } -> std::convertible_to<typename G::base_type>;
  g.height_of(v);
};

/// One uniform-neighbour step.
template <WalkGraph G>
typename G::vertex_type step(const G& g, const typename G::vertex_type& v, Rng& rng) {
  return g.neighbor(v, static_cast<std::size_t>(rng.below(g.degree(v))));
}

inline constexpr std::uint64_t kDefaultStepCap = 1'000'000'000;

/// Stop at the first n with X_n outside `inside` (T_A), with X_n in `hit`
/// (H_A), or at n = horizon, whichever comes first.
template <class V>
struct StopRule {
  std::optional<std::uint64_t> horizon;
  std::function<bool(const V&)> inside;
  std::function<bool(const V&)> hit;
  std::uint64_t cap = kDefaultStepCap;

  static StopRule at_horizon(std::uint64_t n) {
    StopRule r;
    r.horizon = n;
    return r;
  }
  static StopRule exit_of(std::function<bool(const V&)> a) {
    StopRule r;
    r.inside = std::move(a);
    return r;
  }
  static StopRule hit_of(std::function<bool(const V&)> a) {
    StopRule r;
    r.hit = std::move(a);
    return r;
  }
};

enum class StopReason { horizon, exited, hit, cap_exceeded };

/// Horizontal/vertical decomposition X_n = (Z_n, U_n) of a comb walk.
template <class B>
struct DecompositionTrace {
  std::vector<std::uint64_t> zetas{0};        // zeta_0 = 0 < zeta_1 < ...
  std::vector<B> horizontal_path;             // X~_0, X~_1, ...
  std::vector<std::uint64_t> excursion_lengths;  // V_i = zeta_{i+1} - zeta_i
  std::vector<std::uint64_t> base_visits;     // visits to height 0 during excursion i
  std::vector<std::int64_t> heights;          // U_n, n = 0..elapsed
  std::uint64_t elapsed = 0;
  std::uint64_t pending_visits = 0;

  /// Time since the last horizontal step.
  std::uint64_t residual() const { return elapsed - zetas.back(); }
  /// Hor_n = |{k >= 1 : zeta_k <= n}|.
  std::uint64_t hor(std::uint64_t n) const {
    std::uint64_t c = 0;
    for (std::size_t k = 1; k < zetas.size() && zetas[k] <= n; ++k) ++c;
    return c;
  }
  /// (Z_n, U_n) for n = 0..elapsed, rebuilt from the trace alone.
  std::vector<std::pair<B, std::int64_t>> reconstruct() const {
    std::vector<std::pair<B, std::int64_t>> out;
    out.reserve(heights.size());
    std::size_t k = 0;
    for (std::uint64_t n = 0; n < heights.size(); ++n) {
      while (k + 1 < zetas.size() && zetas[k + 1] <= n) ++k;
      out.emplace_back(horizontal_path[k], heights[n]);
    }
    return out;
  }
};

template <class V, class B = V>
struct WalkResult {
  V end{};
  std::uint64_t time = 0;
  StopReason reason = StopReason::horizon;
  std::vector<V> path;  // filled when requested
  std::optional<DecompositionTrace<B>> trace;
};

struct WalkOptions {
  bool record_path = false;
  bool record_trace = false;
  bool throw_on_cap = true;
};

/// Thrown on hitting the step cap; carries the partial walk.
template <class V, class B>
class CapExceeded : public Error {
 public:
  CapExceeded(WalkResult<V, B> partial)
      : Error(Errc::cap_exceeded, "no stop after " + std::to_string(partial.time) + " steps"),
        partial_(std::move(partial)) {}
  const WalkResult<V, B>& partial() const noexcept { return partial_; }

 private:
  WalkResult<V, B> partial_;
};

namespace detail {
template <class G>
struct BaseOf {
  using type = typename G::vertex_type;
};
template <CombLike G>
struct BaseOf<G> {
  using type = typename G::base_type;
};
}  // namespace detail

template <WalkGraph G>
auto simulate_walk(const G& g, typename G::vertex_type start, const StopRule<typename G::vertex_type>& stop,
                   Rng& rng, const WalkOptions& options = {}) {
  using V = typename G::vertex_type;
  using B = typename detail::BaseOf<G>::type;
  WalkResult<V, B> res;
  V x = start;
  if constexpr (CombLike<G>) {
    if (options.record_trace) {
      res.trace.emplace();
      res.trace->horizontal_path.push_back(g.base_of(x));
      res.trace->heights.push_back(static_cast<std::int64_t>(g.height_of(x)));
      res.trace->pending_visits = g.height_of(x) == 0 ? 1 : 0;
    }
  }
  if (options.record_path) res.path.push_back(x);
  std::uint64_t n = 0;
  for (;;) {
    if (stop.inside && !stop.inside(x)) {
      res.reason = StopReason::exited;
      break;
    }
    if (stop.hit && stop.hit(x)) {
      res.reason = StopReason::hit;
      break;
    }
    if (stop.horizon && n >= *stop.horizon) {
      res.reason = StopReason::horizon;
      break;
    }
    if (n >= stop.cap) {
      res.reason = StopReason::cap_exceeded;
      break;
    }
    const V y = step(g, x, rng);
    ++n;
    if constexpr (CombLike<G>) {
      if (res.trace) {
        auto& tr = *res.trace;
        const auto bx = g.base_of(x);
        const auto by = g.base_of(y);
        if (!(bx == by)) {
          tr.excursion_lengths.push_back(n - tr.zetas.back());
          tr.base_visits.push_back(tr.pending_visits);
          tr.pending_visits = 0;
          tr.zetas.push_back(n);
          tr.horizontal_path.push_back(by);
        }
        if (g.height_of(y) == 0) ++tr.pending_visits;
        tr.heights.push_back(static_cast<std::int64_t>(g.height_of(y)));
        tr.elapsed = n;
      }
    }
    x = y;
    if (options.record_path) res.path.push_back(x);
  }
  res.end = x;
  res.time = n;
  if (res.reason == StopReason::cap_exceeded && options.throw_on_cap) throw CapExceeded<V, B>(std::move(res));
  return res;
}

/// Samples of (T_{x,k}, L_{x,k}): exit time of D(x_1, k) and the number of
/// horizontal steps strictly before it.
struct ExitSample {
  std::uint64_t exit_time = 0;
  std::uint64_t horizontal_steps = 0;
  /// Exit vertex for explicit combs; unset on implicit lattice combs.
  std::optional<VertexId> end_vertex;
};

/// `x` must sit at height 0; Errc::ball_exceeds_truncation when B(x_1, k)
/// reaches the truncation boundary.
std::vector<ExitSample> exit_time_samples(const CombGraph& comb, VertexId x, std::size_t k, std::size_t trials,
                                          std::uint64_t seed, unsigned threads = 1);
std::vector<ExitSample> exit_time_samples(const LatticeComb& comb, LatticeSite x, std::size_t k, std::size_t trials,
                                          std::uint64_t seed, unsigned threads = 1);

struct ExcursionStats {
  stats::Summary tau;     // time spent in the tooth at z before the first horizontal step
  stats::Summary visits;  // B_z, visits to (z, 0) in that time
  std::vector<double> tau_samples;
  std::vector<double> visit_samples;
};
ExcursionStats tooth_excursion_stats(const CombGraph& comb, VertexId z, std::size_t trials, std::uint64_t seed,
                                     unsigned threads = 1);
ExcursionStats tooth_excursion_stats(const LatticeComb& comb, LatticeSite z, std::size_t trials, std::uint64_t seed,
                                     unsigned threads = 1);

/// Frequencies of A = {Hor_{t/2} >= c2 (t/2) log^{-g}(t)} and
/// B = {Hor_t <= c3 t log^{-g}(t)}, g the profile exponent.
struct HorizontalCounts {
  double p_a = 0.0;
  double p_b = 0.0;
  double ci_a = 0.0;  // 95% half-widths
  double ci_b = 0.0;
  double c2 = 0.0;
  double c3 = 0.0;
  std::vector<std::uint64_t> hor_half;  // Hor_{t/2} per trial
  std::vector<std::uint64_t> hor_full;  // Hor_t per trial
};
HorizontalCounts horizontal_counts(const CombGraph& comb, VertexId x, std::uint64_t t, std::size_t trials, double c2,
                                   double c3, std::uint64_t seed, unsigned threads = 1);
HorizontalCounts horizontal_counts(const LatticeComb& comb, LatticeSite x, std::uint64_t t, std::size_t trials,
                                   double c2, double c3, std::uint64_t seed, unsigned threads = 1);

/// Median matching: c2 = 0.5 * median(Hor_{t/2} / ((t/2) log^{-g} t)),
/// c3 = 2 * median(Hor_t / (t log^{-g} t)).
std::pair<double, double> calibrate_horizontal_constants(const HorizontalCounts& pilot, std::uint64_t t, double gamma);

struct TailFitConfig {
  double beta = 2.0;
  std::vector<double> lambdas;
};
struct TailFit {
  /// log P(L < k^beta / lambda) ~ intercept + slope * lambda^{1/(beta-1)}.
  double slope = 0.0;
  double intercept = 0.0;
  std::vector<double> lambdas;
  std::vector<double> probabilities;
  /// Every used point lies within a factor 2 of the fitted line.
  bool within_band = false;
};
/// Errc::bad_parameter unless beta in [2, 3] and at least two lambdas give
/// a positive empirical probability.
TailFit fit_exit_tail(const std::vector<ExitSample>& samples, std::size_t k, const TailFitConfig& config);

/// trial,stopTime,endVertex,horizontalSteps
void write_exit_samples_csv(std::ostream& out, const std::vector<ExitSample>& samples);

}  // namespace combwalk
