#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <tuple>
#include <vector>

#include "combwalk/graph.hpp"

namespace combwalk {

enum class SolverKind { none, direct, conjugate_gradient };
std::string_view to_string(SolverKind s) noexcept;

struct SolverOptions {
  /// Sparse LDL^T up to this many unknowns, conjugate gradient beyond.
  std::size_t direct_limit = 50'000;
  double cg_tolerance = 1e-10;
};

/// Solution of the Dirichlet problem f|A = 1, f|B = 0, f harmonic elsewhere.
struct Potential {
  std::vector<double> values;
  std::vector<VertexId> boundary_a;
  std::vector<VertexId> boundary_b;
  SolverKind solver = SolverKind::none;
  /// max over free vertices of |deg(x) f(x) - sum_{y~x} f(y)|.
  double max_residual = 0.0;
};

/// Antisymmetric edge function, stored per directed adjacency slot of the
/// graph (see Graph::slot); entry s is I_{x,y} for slot x -> y.
struct Flow {
  std::vector<double> current;
  std::vector<VertexId> source;
  std::vector<VertexId> sink;
};

/// Errc::bad_parameter on empty A or B, Errc::overlapping_boundary when
/// they intersect, Errc::disconnected for a disconnected graph.
Potential harmonic_potential(const Graph& g, std::span<const VertexId> a, std::span<const VertexId> b,
                             const SolverOptions& options = {});

/// (1/2) sum over ordered adjacent pairs of (f(x) - f(y))^2.
double dirichlet_energy(const Graph& g, std::span<const double> f);

/// R_eff(A, B) = 1 / E(h, h) for the harmonic potential h.
double effective_resistance(const Graph& g, std::span<const VertexId> a, std::span<const VertexId> b,
                            const SolverOptions& options = {});

/// Energy E(I, I) of a valid unit flow from A to B, an upper bound on
/// R_eff(A, B). Errc::invalid_flow (naming the vertex) if I is not
/// antisymmetric, not conserved off A u B, or does not carry unit flux.
double thompson_bound(const Graph& g, const Flow& flow);

/// Unit current flow I_{x,y} = (h(x) - h(y)) / E(h,h) induced by a potential.
Flow potential_flow(const Graph& g, const Potential& h);

/// Builds a flow from (x, y, I_{x,y}) triples, filling in the reverse
/// direction antisymmetrically. Errc::bad_parameter for a non-edge.
Flow flow_from_edges(const Graph& g, std::span<const VertexId> a, std::span<const VertexId> b,
                     std::span<const std::tuple<VertexId, VertexId, double>> currents);

}  // namespace combwalk
