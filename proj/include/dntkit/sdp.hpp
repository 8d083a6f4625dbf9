#pragma once

// Dense semidefinite programming over block-diagonal Hermitian PSD variables.
//
//   minimize (or maximize)  sum_b <C_b, X_b>
//   subject to              sum_b <A_cb, X_b> = b_c   for every constraint c
//                           X_b >= 0
//
// with <A, X> = Re tr(A^dagger X). The dual vector follows the caller's
// sense: for Minimize, C - sum_c y_c A_c >= 0 and the dual objective b^T y
// is a lower bound on the primal objective; for Maximize, sum_c y_c A_c - C
// >= 0 and b^T y is an upper bound.
//
// The solver runs a primal-dual path-following method on the homogeneous
// self-dual embedding with the HKM search direction. Complex blocks are
// solved through the real symmetric embedding H -> [[Re H, -Im H], [Im H, Re H]].

#include <cstddef>
#include <string>
#include <vector>

#include "dntkit/hermat.hpp"

namespace dntkit {

struct SdpTerm {
  std::size_t block = 0;
  HermitianMatrix coeff;
};

struct SdpConstraint {
  std::vector<SdpTerm> terms;  // blocks not listed have a zero coefficient
  double rhs = 0.0;
};

enum class Sense { Minimize, Maximize };

struct SdpProblem {
  std::vector<Eigen::Index> block_dims;
  Sense sense = Sense::Minimize;
  std::vector<SdpTerm> objective;
  std::vector<SdpConstraint> constraints;
};

enum class SdpStatus { Optimal, PrimalInfeasible, DualInfeasible, NumericalLimit };

const char* to_string(SdpStatus s);

struct SdpResiduals {
  double primal_eq = 0.0;  // max_c |sum <A_cb, X_b> - b_c| / (1 + |b_c|)
  double dual_eq = 0.0;    // max-norm of the dual slack defect / (1 + max ||C_b||)
  double gap = 0.0;        // |p - d| / (1 + |p| + |d|)
};

struct SdpSolution {
  SdpStatus status = SdpStatus::NumericalLimit;
  std::vector<HermitianMatrix> primal_blocks;
  std::vector<double> dual_vector;
  double primal_objective = 0.0;
  double dual_objective = 0.0;
  SdpResiduals residuals;
  int iterations = 0;
  std::vector<std::size_t> dropped_constraints;
};

struct SdpOptions {
  int max_iters = 200;
  double tol = 1e-8;
  bool predictor_corrector = false;
};

struct ScalingReport {
  std::vector<double> row_scale;          // per original constraint
  std::vector<std::size_t> dropped;       // original indices, ascending
  std::vector<std::size_t> kept;          // original index of each kept row
  std::vector<std::size_t> inconsistent;  // dropped rows whose rhs disagrees
  bool identity() const;
};

struct Preconditioned {
  SdpProblem problem;
  ScalingReport report;
};

/// Rescales rows whose largest coefficient magnitude lies outside
/// [1e-3, 1e3] and drops rows linearly dependent on earlier ones.
Preconditioned precondition(const SdpProblem& problem);

SdpSolution solve(const SdpProblem& problem, const SdpOptions& opts = {});

// Real symmetric embedding and its left inverse.
Eigen::MatrixXd real_embedding(const CMatrix& h);
CMatrix extract_from_embedding(const Eigen::MatrixXd& w);

}  // namespace dntkit
