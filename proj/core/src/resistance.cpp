#include "combwalk/resistance.hpp"

#include <Eigen/IterativeLinearSolvers>
#include <algorithm>
#include <cmath>
#include <string>

#include "combwalk/error.hpp"
#include "laplacian.hpp"

namespace combwalk {

std::string_view to_string(SolverKind s) noexcept {
  switch (s) {
    case SolverKind::none: return "none";
    case SolverKind::direct: return "direct-ldlt";
    case SolverKind::conjugate_gradient: return "conjugate-gradient";
  }
  return "unknown";
}

namespace detail {

DirichletLaplacian::DirichletLaplacian(const Graph& g, std::span<const VertexId> interior,
                                       const SolverOptions& options)
    : interior_(interior.begin(), interior.end()),
      local_(g.vertex_count(), kNotInterior),
      tolerance_(options.cg_tolerance) {
  for (std::uint32_t i = 0; i < interior_.size(); ++i) local_[interior_[i]] = i;
  const auto n = static_cast<Eigen::Index>(interior_.size());
  std::vector<Eigen::Triplet<double>> triplets;
  for (std::uint32_t i = 0; i < interior_.size(); ++i) {
    const VertexId v = interior_[i];
    triplets.emplace_back(i, i, static_cast<double>(g.degree(v)));
    for (VertexId u : g.neighbors(v)) {
      if (local_[u] != kNotInterior) triplets.emplace_back(i, local_[u], -1.0);
    }
  }
  matrix_.resize(n, n);
  matrix_.setFromTriplets(triplets.begin(), triplets.end());
  if (interior_.empty()) {
    solver_ = SolverKind::none;
  } else if (interior_.size() <= options.direct_limit) {
    solver_ = SolverKind::direct;
    direct_ = std::make_unique<Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>>>(matrix_);
    if (direct_->info() != Eigen::Success) {
      throw Error(Errc::divergent, "Dirichlet Laplacian is singular");
    }
  } else {
    solver_ = SolverKind::conjugate_gradient;
  }
}

DirichletLaplacian::~DirichletLaplacian() = default;

Eigen::VectorXd DirichletLaplacian::solve(const Eigen::VectorXd& rhs) const {
  if (solver_ == SolverKind::none) return {};
  if (solver_ == SolverKind::direct) return direct_->solve(rhs);
  Eigen::ConjugateGradient<Eigen::SparseMatrix<double>, Eigen::Lower | Eigen::Upper> cg;
  cg.setTolerance(tolerance_);
  cg.setMaxIterations(std::max<Eigen::Index>(1000, 20 * matrix_.rows()));
  cg.compute(matrix_);
  Eigen::VectorXd x = cg.solve(rhs);
  if (cg.info() != Eigen::Success) throw Error(Errc::divergent, "conjugate gradient did not converge");
  return x;
}

Eigen::VectorXd DirichletLaplacian::inverse_diagonal() const {
  const auto n = static_cast<Eigen::Index>(size());
  Eigen::VectorXd diag(n);
  Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    e[i] = 1.0;
    diag[i] = solve(e)[i];
    e[i] = 0.0;
  }
  return diag;
}

}  // namespace detail

namespace {

void validate_boundaries(const Graph& g, std::span<const VertexId> a, std::span<const VertexId> b,
                         std::vector<char>& role) {
  if (a.empty() || b.empty()) throw Error(Errc::bad_parameter, "boundary sets must be nonempty");
  role.assign(g.vertex_count(), 0);
  for (VertexId v : a) {
    if (v >= g.vertex_count()) throw Error(Errc::bad_parameter, "boundary vertex out of range");
    role[v] = 1;
  }
  for (VertexId v : b) {
    if (v >= g.vertex_count()) throw Error(Errc::bad_parameter, "boundary vertex out of range");
    if (role[v] == 1) {
      throw Error(Errc::overlapping_boundary, "vertex " + std::to_string(v) + " is in both A and B");
    }
    role[v] = 2;
  }
}

}  // namespace

Potential harmonic_potential(const Graph& g, std::span<const VertexId> a, std::span<const VertexId> b,
                             const SolverOptions& options) {
  std::vector<char> role;
  validate_boundaries(g, a, b, role);
  if (!is_connected(g)) throw Error(Errc::disconnected, "graph is not connected");

  Potential out;
  out.boundary_a.assign(a.begin(), a.end());
  out.boundary_b.assign(b.begin(), b.end());
  out.values.assign(g.vertex_count(), 0.0);
  std::vector<VertexId> free;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (role[v] == 1) out.values[v] = 1.0;
    if (role[v] == 0) free.push_back(v);
  }
  if (free.empty()) return out;

  detail::DirichletLaplacian lap(g, free, options);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(free.size()));
  for (std::uint32_t i = 0; i < free.size(); ++i) {
    for (VertexId u : g.neighbors(free[i])) {
      if (role[u] == 1) rhs[i] += 1.0;
    }
  }
  const Eigen::VectorXd x = lap.solve(rhs);
  for (std::uint32_t i = 0; i < free.size(); ++i) out.values[free[i]] = x[i];
  out.solver = lap.solver();
  for (VertexId v : free) {
    double r = static_cast<double>(g.degree(v)) * out.values[v];
    for (VertexId u : g.neighbors(v)) r -= out.values[u];
    out.max_residual = std::max(out.max_residual, std::abs(r));
  }
  return out;
}

double dirichlet_energy(const Graph& g, std::span<const double> f) {
  if (f.size() != g.vertex_count()) throw Error(Errc::bad_parameter, "function size does not match graph");
  double energy = 0.0;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    for (VertexId u : g.neighbors(v)) {
      if (v < u) {
        const double d = f[v] - f[u];
        energy += d * d;
      }
    }
  }
  return energy;
}

double effective_resistance(const Graph& g, std::span<const VertexId> a, std::span<const VertexId> b,
                            const SolverOptions& options) {
  const auto h = harmonic_potential(g, a, b, options);
  return 1.0 / dirichlet_energy(g, h.values);
}

double thompson_bound(const Graph& g, const Flow& flow) {
  const std::size_t slots = 2 * g.edge_count();
  if (flow.current.size() != slots) throw Error(Errc::invalid_flow, "flow has wrong number of entries");
  std::vector<char> role;
  validate_boundaries(g, flow.source, flow.sink, role);

  constexpr double kTol = 1e-9;
  double scale = 1.0;
  for (double c : flow.current) scale = std::max(scale, std::abs(c));
  double out_of_a = 0.0;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    double net = 0.0;
    for (std::size_t i = 0; i < g.degree(v); ++i) {
      const std::size_t s = g.slot(v, i);
      if (std::abs(flow.current[s] + flow.current[g.reverse_slot(s)]) > kTol * scale) {
        throw Error(Errc::invalid_flow, "not antisymmetric at vertex " + std::to_string(v));
      }
      net += flow.current[s];
    }
    if (role[v] == 1) out_of_a += net;
    if (role[v] == 0 && std::abs(net) > kTol * scale) {
      throw Error(Errc::invalid_flow, "flow not conserved at vertex " + std::to_string(v));
    }
  }
  if (std::abs(out_of_a - 1.0) > kTol * scale) {
    throw Error(Errc::invalid_flow, "flux out of source is " + std::to_string(out_of_a) + ", not 1 (vertex " +
                                        std::to_string(flow.source.front()) + ")");
  }
  double energy = 0.0;
  for (double c : flow.current) energy += c * c;
  return 0.5 * energy;
}

Flow potential_flow(const Graph& g, const Potential& h) {
  const double energy = dirichlet_energy(g, h.values);
  Flow flow;
  flow.source = h.boundary_a;
  flow.sink = h.boundary_b;
  flow.current.resize(2 * g.edge_count());
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    for (std::size_t i = 0; i < g.degree(v); ++i) {
      flow.current[g.slot(v, i)] = (h.values[v] - h.values[g.neighbor(v, i)]) / energy;
    }
  }
  return flow;
}

Flow flow_from_edges(const Graph& g, std::span<const VertexId> a, std::span<const VertexId> b,
                     std::span<const std::tuple<VertexId, VertexId, double>> currents) {
  Flow flow;
  flow.source.assign(a.begin(), a.end());
  flow.sink.assign(b.begin(), b.end());
  flow.current.assign(2 * g.edge_count(), 0.0);
  for (const auto& [x, y, value] : currents) {
    auto nb = g.neighbors(x);
    auto it = std::lower_bound(nb.begin(), nb.end(), y);
    if (it == nb.end() || *it != y) {
      throw Error(Errc::bad_parameter, "flow on non-edge " + std::to_string(x) + "-" + std::to_string(y));
    }
    const std::size_t s = g.slot(x, static_cast<std::size_t>(it - nb.begin()));
    flow.current[s] = value;
    flow.current[g.reverse_slot(s)] = -value;
  }
  return flow;
}

}  // namespace combwalk
