#include "combwalk/walker.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <type_traits>

#include "combwalk/parallel.hpp"

namespace combwalk {

namespace {

template <class G, class InBall>
std::vector<ExitSample> exit_samples_impl(const G& g, typename G::vertex_type start, InBall&& in_ball,
                                          std::size_t trials, std::uint64_t seed, unsigned threads) {
  std::vector<ExitSample> out(trials);
  parallel_for(trials, threads, [&](std::size_t i) {
    Rng rng = stream(seed, i);
    auto v = start;
    ExitSample s;
    std::uint64_t horizontal = 0;
    while (in_ball(g.base_of(v))) {
      if (s.exit_time >= kDefaultStepCap) throw Error(Errc::cap_exceeded, "exit not reached within step cap");
      const auto y = step(g, v, rng);
      if (!(g.base_of(y) == g.base_of(v))) ++horizontal;
      v = y;
      ++s.exit_time;
    }
    // The exiting move is itself a horizontal step.
    s.horizontal_steps = horizontal == 0 ? 0 : horizontal - 1;
    if constexpr (std::is_same_v<typename G::vertex_type, VertexId>) s.end_vertex = v;
    out[i] = s;
  });
  return out;
}

template <class G>
ExcursionStats excursion_impl(const G& g, typename G::vertex_type start, std::size_t trials, std::uint64_t seed,
                              unsigned threads) {
  ExcursionStats st;
  st.tau_samples.resize(trials);
  st.visit_samples.resize(trials);
  parallel_for(trials, threads, [&](std::size_t i) {
    Rng rng = stream(seed, i);
    auto v = start;
    const auto b = g.base_of(start);
    std::uint64_t tau = 0, visits = 0;
    for (;;) {
      if (g.height_of(v) == 0) ++visits;
      const auto y = step(g, v, rng);
      ++tau;
      if (!(g.base_of(y) == b)) break;
      v = y;
    }
    st.tau_samples[i] = static_cast<double>(tau);
    st.visit_samples[i] = static_cast<double>(visits);
  });
  st.tau = stats::summarize(st.tau_samples);
  st.visits = stats::summarize(st.visit_samples);
  return st;
}

double log_scale(std::uint64_t t, double gamma) {
  return std::pow(std::log(static_cast<double>(t)), -gamma);
}

template <class G>
HorizontalCounts horizontal_impl(const G& g, typename G::vertex_type start, std::uint64_t t, std::size_t trials,
                                 double c2, double c3, double gamma, std::uint64_t seed, unsigned threads) {
  if (!(c2 > 0.0) || !(c3 > 0.0)) throw Error(Errc::bad_parameter, "c2 and c3 must be positive");
  if (t < 2) throw Error(Errc::bad_parameter, "t must be at least 2");
  if (trials == 0) throw Error(Errc::bad_parameter, "trials must be positive");
  HorizontalCounts hc;
  hc.c2 = c2;
  hc.c3 = c3;
  hc.hor_half.resize(trials);
  hc.hor_full.resize(trials);
  const std::uint64_t half = t / 2;
  parallel_for(trials, threads, [&](std::size_t i) {
    Rng rng = stream(seed, i);
    auto v = start;
    std::uint64_t hor = 0;
    for (std::uint64_t n = 1; n <= t; ++n) {
      const auto y = step(g, v, rng);
      if (!(g.base_of(y) == g.base_of(v))) ++hor;
      v = y;
      if (n == half) hc.hor_half[i] = hor;
    }
    hc.hor_full[i] = hor;
  });
  const double scale = log_scale(t, gamma);
  const double thr_a = c2 * static_cast<double>(half) * scale;
  const double thr_b = c3 * static_cast<double>(t) * scale;
  std::size_t a = 0, b = 0;
  for (std::size_t i = 0; i < trials; ++i) {
    if (static_cast<double>(hc.hor_half[i]) >= thr_a) ++a;
    if (static_cast<double>(hc.hor_full[i]) <= thr_b) ++b;
  }
  const double n = static_cast<double>(trials);
  const double z = stats::normal_quantile(0.975);
  hc.p_a = static_cast<double>(a) / n;
  hc.p_b = static_cast<double>(b) / n;
  hc.ci_a = z * std::sqrt(hc.p_a * (1.0 - hc.p_a) / n);
  hc.ci_b = z * std::sqrt(hc.p_b * (1.0 - hc.p_b) / n);
  return hc;
}

void check_skeleton(const CombGraph& comb, VertexId x) {
  if (x >= comb.vertex_count()) throw Error(Errc::bad_parameter, "vertex out of range");
  if (comb.height_of(x) != 0) throw Error(Errc::bad_parameter, "vertex is not on the skeleton");
}

double median(std::vector<double> v) {
  if (v.empty()) throw Error(Errc::bad_parameter, "median of empty sample");
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
  double m = v[mid];
  if (v.size() % 2 == 0) {
    m = 0.5 * (m + *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid)));
  }
  return m;
}

}  // namespace

std::vector<ExitSample> exit_time_samples(const CombGraph& comb, VertexId x, std::size_t k, std::size_t trials,
                                          std::uint64_t seed, unsigned threads) {
  check_skeleton(comb, x);
  const BaseGraph& base = comb.base();
  const VertexId x1 = comb.base_of(x);
  const std::size_t trunc = base.truncation_radius(x1);
  if (trunc != kUnreachable && k >= trunc) {
    throw Error(Errc::ball_exceeds_truncation,
                "ball radius " + std::to_string(k) + " reaches the truncation at " + std::to_string(trunc));
  }
  std::vector<char> in(base.vertex_count(), 0);
  for (VertexId v : ball(base.graph(), x1, k)) in[v] = 1;
  return exit_samples_impl(comb, x, [&](VertexId b) { return in[b] != 0; }, trials, seed, threads);
}

std::vector<ExitSample> exit_time_samples(const LatticeComb& comb, LatticeSite x, std::size_t k, std::size_t trials,
                                          std::uint64_t seed, unsigned threads) {
  const LatticeVertex start{x.x, x.y, 0};
  return exit_samples_impl(
      comb, start, [&](const LatticeSite& s) { return LatticeComb::base_distance(x, s) <= k; }, trials, seed,
      threads);
}

ExcursionStats tooth_excursion_stats(const CombGraph& comb, VertexId z, std::size_t trials, std::uint64_t seed,
                                     unsigned threads) {
  if (z >= comb.base().vertex_count()) throw Error(Errc::bad_parameter, "z is not a base vertex");
  if (comb.base().truncation_radius(z) == 0) {
    throw Error(Errc::horizon_exceeds_truncation, "z lies on the truncation boundary");
  }
  return excursion_impl(comb, z, trials, seed, threads);
}

ExcursionStats tooth_excursion_stats(const LatticeComb& comb, LatticeSite z, std::size_t trials, std::uint64_t seed,
                                     unsigned threads) {
  return excursion_impl(comb, LatticeVertex{z.x, z.y, 0}, trials, seed, threads);
}

HorizontalCounts horizontal_counts(const CombGraph& comb, VertexId x, std::uint64_t t, std::size_t trials, double c2,
                                   double c3, std::uint64_t seed, unsigned threads) {
  if (x >= comb.vertex_count()) throw Error(Errc::bad_parameter, "vertex out of range");
  if (t > comb.truncation_radius(x)) {
    throw Error(Errc::horizon_exceeds_truncation, "horizon " + std::to_string(t) + " exceeds truncation radius " +
                                                      std::to_string(comb.truncation_radius(x)));
  }
  return horizontal_impl(comb, x, t, trials, c2, c3, comb.profile().gamma, seed, threads);
}

HorizontalCounts horizontal_counts(const LatticeComb& comb, LatticeSite x, std::uint64_t t, std::size_t trials,
                                   double c2, double c3, std::uint64_t seed, unsigned threads) {
  return horizontal_impl(comb, LatticeVertex{x.x, x.y, 0}, t, trials, c2, c3, comb.gamma(), seed, threads);
}

std::pair<double, double> calibrate_horizontal_constants(const HorizontalCounts& pilot, std::uint64_t t,
                                                         double gamma) {
  const double scale = log_scale(t, gamma);
  std::vector<double> a, b;
  for (auto h : pilot.hor_half) a.push_back(static_cast<double>(h) / (static_cast<double>(t / 2) * scale));
  for (auto h : pilot.hor_full) b.push_back(static_cast<double>(h) / (static_cast<double>(t) * scale));
  return {0.5 * median(a), 2.0 * median(b)};
}

TailFit fit_exit_tail(const std::vector<ExitSample>& samples, std::size_t k, const TailFitConfig& config) {
  if (config.beta < 2.0 || config.beta > 3.0) throw Error(Errc::bad_parameter, "beta must lie in [2, 3]");
  if (samples.empty()) throw Error(Errc::bad_parameter, "no samples");
  TailFit fit;
  const double kb = std::pow(static_cast<double>(k), config.beta);
  std::vector<double> xs, ys;
  for (double lambda : config.lambdas) {
    if (!(lambda > 0.0)) throw Error(Errc::bad_parameter, "lambda must be positive");
    const double threshold = kb / lambda;
    std::size_t below = 0;
    for (const auto& s : samples) {
      if (static_cast<double>(s.horizontal_steps) < threshold) ++below;
    }
    const double p = static_cast<double>(below) / static_cast<double>(samples.size());
    fit.lambdas.push_back(lambda);
    fit.probabilities.push_back(p);
    if (p > 0.0) {
      xs.push_back(std::pow(lambda, 1.0 / (config.beta - 1.0)));
      ys.push_back(std::log(p));
    }
  }
  if (xs.size() < 2) throw Error(Errc::bad_parameter, "fewer than two lambdas with positive tail mass");
  const auto lf = stats::linear_fit(xs, ys);
  fit.slope = lf.slope;
  fit.intercept = lf.intercept;
  fit.within_band = true;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (std::abs(ys[i] - (lf.intercept + lf.slope * xs[i])) > std::log(2.0)) fit.within_band = false;
  }
  return fit;
}

void write_exit_samples_csv(std::ostream& out, const std::vector<ExitSample>& samples) {
  out << "trial,stopTime,endVertex,horizontalSteps\n";
  for (std::size_t i = 0; i < samples.size(); ++i) {
    out << i << ',' << samples[i].exit_time << ',';
    if (samples[i].end_vertex) out << *samples[i].end_vertex;
    out << ',' << samples[i].horizontal_steps << '\n';
  }
}

}  // namespace combwalk
