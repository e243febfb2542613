#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "combwalk/base_graph.hpp"
#include "combwalk/comb_graph.hpp"
#include "combwalk/graph.hpp"
#include "combwalk/resistance.hpp"

namespace combwalk {

/// P_x(X_t = y) versus p_t(x,y) = P_x(X_t = y) / deg(y).
enum class Normalization { probability, degree_normalized };
std::string_view to_string(Normalization n) noexcept;
std::optional<Normalization> parse_normalization(std::string_view text) noexcept;

struct KernelTable {
  VertexId source = 0;
  std::size_t horizon = 0;
  /// kUnreachable for graphs without a truncation boundary.
  std::size_t truncation_radius = kUnreachable;
  Normalization normalization = Normalization::degree_normalized;
  /// rows[t][y] for t = 0..horizon.
  std::vector<std::vector<double>> rows;
};

/// Exact kernels on a finite graph (no truncation check).
std::vector<double> heat_kernel_row(const Graph& g, VertexId x, std::size_t t,
                                    Normalization n = Normalization::degree_normalized);
KernelTable heat_kernel_table(const Graph& g, VertexId x, std::size_t horizon,
                              Normalization n = Normalization::degree_normalized);

/// Kernels on a truncated comb; Errc::horizon_exceeds_truncation when
/// t > comb.truncation_radius(x).
std::vector<double> heat_kernel_row(const CombGraph& comb, VertexId x, std::size_t t,
                                    Normalization n = Normalization::degree_normalized);
KernelTable heat_kernel_table(const CombGraph& comb, VertexId x, std::size_t horizon,
                              Normalization n = Normalization::degree_normalized);

/// P_x(X_s = x) for s = 0..t (un-normalised return probabilities).
std::vector<double> return_probabilities(const Graph& g, VertexId x, std::size_t t);

/// Rows P_x(X_t = ., t < T_A) of the walk killed on leaving `inside`
/// (mask over vertices), together with the mass lost so far.
struct KilledEvolution {
  std::vector<std::vector<double>> rows;  // probability form
  std::vector<double> lost;               // lost[t] = P_x(T_A <= t)
};
KilledEvolution killed_evolution(const Graph& g, VertexId x, std::span<const char> inside, std::size_t horizon);

/// Law of the exit time T_A = inf{n >= 0 : X_n not in A} up to a horizon.
struct ExitTimeLaw {
  std::vector<double> pmf;  // pmf[s] = P_x(T_A = s), s = 0..horizon
  double tail = 0.0;        // P_x(T_A > horizon)
};
ExitTimeLaw exit_time_law(const Graph& g, VertexId x, std::span<const char> inside, std::size_t horizon);
/// Exit law of the base ball B(x, k); Errc::ball_exceeds_truncation if the
/// ball reaches the truncation boundary.
ExitTimeLaw ball_exit_law(const BaseGraph& base, VertexId x, std::size_t k, std::size_t horizon);

/// g_A(x,y) = [(D - Adj)_A^{-1}]_{xy} (deg-normalised Green kernel killed
/// on exiting A). 0 when x or y is outside A or A is empty;
/// Errc::divergent if some component of A has no exit.
double killed_green(const Graph& g, std::span<const VertexId> a, VertexId x, VertexId y,
                    const SolverOptions& options = {});
/// g_A(v,v) for every v in A, in the order of `a`.
std::vector<double> killed_green_diagonal(const Graph& g, std::span<const VertexId> a,
                                          const SolverOptions& options = {});

/// sum_{n=a}^{b} p_n(x,y). Errc::bad_range when a > b.
double truncated_green(const Graph& g, VertexId x, VertexId y, std::size_t a, std::size_t b);
double truncated_green(const CombGraph& comb, VertexId x, VertexId y, std::size_t a, std::size_t b);

struct GreenRatio {
  double ratio = 1.0;
  /// g_{D_r}(o_V, o_V).
  double origin_green = 0.0;
  VertexId argmax_base = 0;
  std::uint32_t argmax_height = 0;
};
/// max_{x in D_r} g_{D_r}(x,x) / g_{D_r}(o_V,o_V) with D_r = D(o, r).
/// Teeth hang off the base ball, so g_{D_r}((v,h),(v,h)) = h + g^base_{B}(v,v)
/// and only the base Dirichlet problem is solved.
GreenRatio green_criterion_ratio(const CombGraph& comb, std::size_t r, const SolverOptions& options = {});

/// E_z[U_t^2] with U_t = sum_{s<=t} 1{X_s = z}.
double occupation_second_moment(const Graph& g, VertexId z, std::size_t t);
/// Errc::horizon_exceeds_truncation unless t <= base.truncation_radius(z).
double occupation_second_moment(const BaseGraph& base, VertexId z, std::size_t t);

/// Law of H_0 for the walk on the tooth {0..m} started at h; steps +-1 in
/// the interior, the tip m steps down.
struct HittingLaw {
  std::vector<double> pmf;  // pmf[s] = P_h(H_0 = s)
  double tail = 0.0;        // P_h(H_0 > horizon)
  /// Exact E_h[H_0] = h (2m - h), filled when requested.
  std::optional<double> mean;
};
HittingLaw segment_hitting_law(std::uint64_t m, std::uint64_t h, std::size_t horizon, bool with_mean = true);

/// First exit of {0..m} by SRW on Z from h, by side.
struct IntervalExitLaw {
  std::vector<double> low;   // P_h(T = s, X_T = -1)
  std::vector<double> high;  // P_h(T = s, X_T = m+1)
  double tail = 0.0;
  double total_low() const;
  double total_high() const;
};
IntervalExitLaw interval_exit_law(std::uint64_t m, std::uint64_t h, std::size_t horizon);

/// E_x[H_B] for all x by first-step analysis; 0 on B.
std::vector<double> expected_hitting_times(const Graph& g, std::span<const VertexId> targets,
                                           const SolverOptions& options = {});

/// sum_{t<=T} sum_{x in region} P_start(X_t = x)^2.
double expected_collisions_region(const Graph& g, std::span<const VertexId> region, std::size_t horizon,
                                  VertexId start);
double expected_collisions_region(const CombGraph& comb, std::span<const VertexId> region, std::size_t horizon,
                                  VertexId start);

/// Rigorous two-sided bounds from a killed evolution, for horizons beyond
/// what an exact truncation can hold. With P = P_killed + e, e >= 0 and
/// sum e <= lost:
///   sum P_killed^2 <= sum P^2 <= sum P_killed^2 + 2 lost max P_killed + lost^2.
/// On the diagonal, mass killed at y at time s returns to x with
/// probability deg(x)/deg(y) P_x(X_{t-s} = y) <= deg(x)/deg(y) P_x(T_A <= t-s),
/// which bounds e_x by a convolution of the loss with itself.
struct DiagonalBounds {
  std::vector<double> lower;  // per t, in the requested normalisation
  std::vector<double> upper;
  std::vector<double> lost;
};
/// `inside` is a vertex mask of the comb; every inside vertex must lie off
/// the truncation boundary (Errc::horizon_exceeds_truncation otherwise).
DiagonalBounds heat_kernel_diagonal_bounds(const CombGraph& comb, VertexId x, std::span<const char> inside,
                                           std::size_t horizon, Normalization n = Normalization::degree_normalized);

struct CollisionBounds {
  double lower = 0.0;
  double upper = 0.0;
  double lost = 0.0;
};
CollisionBounds expected_collisions_region_bounds(const CombGraph& comb, std::span<const VertexId> region,
                                                  std::size_t horizon, VertexId start, std::span<const char> inside);

/// Columns t, vertexId, value, normalization; one row per (t, vertex).
void write_kernel_csv(std::ostream& out, const KernelTable& table);

}  // namespace combwalk
