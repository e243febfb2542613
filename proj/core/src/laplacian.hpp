#pragma once

// Internal: Dirichlet Laplacian (D - Adj) restricted to an interior vertex
// set, with the factorisation choice shared by resistance and kernels.

#include <Eigen/Sparse>
#include <memory>
#include <span>
#include <vector>

#include "combwalk/graph.hpp"
#include "combwalk/resistance.hpp"

namespace combwalk::detail {

class DirichletLaplacian {
 public:
  static constexpr std::uint32_t kNotInterior = 0xffffffffu;

  DirichletLaplacian(const Graph& g, std::span<const VertexId> interior, const SolverOptions& options);
  ~DirichletLaplacian();

  std::size_t size() const noexcept { return interior_.size(); }
  std::span<const VertexId> interior() const noexcept { return interior_; }
  /// Local index of a graph vertex, kNotInterior outside.
  std::uint32_t local(VertexId v) const noexcept { return local_[v]; }
  SolverKind solver() const noexcept { return solver_; }

  /// Solves L x = rhs (local indexing).
  Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const;
  /// diag(L^{-1}) by one solve per column.
  Eigen::VectorXd inverse_diagonal() const;

 private:
  std::vector<VertexId> interior_;
  std::vector<std::uint32_t> local_;
  SolverKind solver_;
  double tolerance_;
  Eigen::SparseMatrix<double> matrix_;
  std::unique_ptr<Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>>> direct_;
};

}  // namespace combwalk::detail
