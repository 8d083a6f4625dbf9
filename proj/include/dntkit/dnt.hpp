#pragma once

// Doubly normalised tensors: n x n grids of PSD operators whose rows and
// columns are all POVMs.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "dntkit/jointmeas.hpp"
#include "dntkit/povm.hpp"
#include "dntkit/sdp.hpp"
#include "dntkit/stochastic.hpp"

namespace dntkit {

inline constexpr std::size_t kMaxDecomposeN = 4;

using Grid = std::vector<std::vector<HermitianMatrix>>;

class Dnt {
 public:
  // Same checks as dnt_validate.
  explicit Dnt(Grid grid);

  std::size_t n() const { return grid_.size(); }
  Eigen::Index dim() const { return grid_.front().front().dim(); }
  const HermitianMatrix& operator()(std::size_t i, std::size_t j) const { return grid_[i][j]; }
  const Grid& grid() const { return grid_; }

 private:
  Grid grid_;
};

/// Throws EntryNotPsd(i, j, min_eig), RowNotNormalized(i, defect) or
/// ColumnNotNormalized(j, defect) for the first violated condition, scanning
/// entries row-major, then rows, then columns.
Dnt dnt_validate(Grid grid);

struct DntDefects {
  double min_eigenvalue = 0.0;
  double row_defect = 0.0;
  double column_defect = 0.0;
};

/// Diagnostics of a square grid without validating it.
DntDefects dnt_defects(const Grid& grid);

std::vector<Povm> rows(const Dnt& d);
std::vector<Povm> columns(const Dnt& d);

/// n with n! == count, for n <= 6.
std::optional<int> factorial_root(std::size_t count);

/// B_ab = sum over l with Pi_l(b) = a of coeffs[l], permutations in canonical
/// order. Coefficients need not be PSD.
Grid combine_permutation_tensors(int n, std::span<const HermitianMatrix> coeffs);

/// Throws BadCardinality unless the outcome count is n! for some n <= 6.
Dnt synthesize(const Povm& coefficients);

struct PermutationDecomposition {
  int n = 0;
  Povm coefficients;  // n! outcomes in canonical permutation order
};

struct DecompositionVerdict {
  bool decomposable = false;
  double eta = 0.0;
  std::optional<PermutationDecomposition> decomposition;
  SdpStatus solver_status = SdpStatus::Optimal;
  SdpResiduals solver_residuals;
};

/// Solves  max eta  s.t.  Q_l >= 0,
///   sum_{l : Pi_l(j) = i} Q_l = eta A_ij + (1 - eta) I/n,  eta <= 1.
/// For n <= 2 the constraints determine Q = (A_11, A_12) and no program is
/// solved. Throws NTooLarge for n > 4.
DecompositionVerdict decide_permutation_decomposable(const Dnt& d, double tol = 1e-6,
                                                     const SdpOptions& opts = {});

struct ConstructiveDecomposition {
  PermutationDecomposition decomposition;
  std::vector<BvnDecomposition> slices;  // r^(k) for each mother outcome k
};

/// `map` has 2n measurements: rows i = 0..n-1, then columns n + j. It must be
/// symmetric, mu(j | row i, k) = mu(i | column j, k), within 1e-10.
ConstructiveDecomposition decompose_from_symmetric_mother(const Dnt& d, const Povm& mother,
                                                          const PostProcessingMap& map);

/// Extends a row map of a linearly independent mother to the symmetric
/// 2n-measurement map accepted by decompose_from_symmetric_mother.
PostProcessingMap symmetrize_from_independent_mother(const Dnt& d, const Povm& mother,
                                                     const PostProcessingMap& row_map);

struct PseudoMother {
  std::size_t num_measurements = 0;
  std::size_t num_outcomes = 0;
  std::vector<std::size_t> order;  // product order, 0-based measurement indices
  std::vector<CMatrix> elements;   // indexed like outcome_tuple
  std::vector<bool> hermitian;
  std::vector<bool> psd;  // false for non-Hermitian elements
  double normalization_defect = 0.0;
};

/// Elements B^(o_1)_{b_{o_1}} ... B^(o_m)_{b_{o_m}} for every tuple b. An
/// empty order means 0, 1, ..., m-1.
PseudoMother pseudo_mother(std::span<const Povm> measurements,
                           std::span<const std::size_t> order = {});

/// Sum of the elements whose tuple has b_i = j.
CMatrix pseudo_marginal(const PseudoMother& pm, std::size_t i, std::size_t j);

/// Largest max-norm error of the deterministic marginals against the inputs.
double pseudo_mother_reproduction_error(const PseudoMother& pm, std::span<const Povm> measurements);

struct AffineDecomposition {
  int n = 0;
  std::vector<HermitianMatrix> coefficients;  // n!, canonical order
  double residual = 0.0;
  std::vector<bool> psd_flags;
  bool success = false;  // residual <= 1e-8
};

/// Minimum-norm Hermitian coefficients with the marginal sums of d. Throws
/// NTooLarge for n > 4.
AffineDecomposition affine_decompose(const Dnt& d);

/// Max-norm error of the marginal sums of coeffs against d.
double affine_residual(const Dnt& d, std::span<const HermitianMatrix> coeffs);

/// Mother M_{a n + b} = A_ab / n of the trivial pair (I/n, ..., I/n) twice,
/// with the marginal map for two measurements.
MotherMeasurement mother_of_trivial_pair(const Dnt& d);

/// Inverse of mother_of_trivial_pair. Throws BadMarginals when a row or column
/// marginal differs from I/n by more than 1e-9.
Dnt dnt_from_trivial_mother(const Grid& mother_grid);
Dnt dnt_from_trivial_mother(const Povm& mother);

struct DntExtremalityReport {
  bool extremal = false;
  std::size_t kernel_dimension = 0;
  bool rows_columns_extremal = false;
};

/// Kernel test of support-restricted perturbations with vanishing row and
/// column sums. Limited to n <= 4, d <= 4.
DntExtremalityReport dnt_is_extremal(const Dnt& d);

Povm trine_povm();
Dnt build_trine_dnt();

enum class RandomDntMethod { Coefficient, Sinkhorn };

/// Coefficient: synthesize(random_povm(n!, d, seed)). Sinkhorn: alternate row
/// and column normalization of random PSD blocks, at most 500 rounds; throws
/// SinkhornNotConverged.
Dnt random_dnt(std::size_t n, Eigen::Index d, std::uint64_t seed,
               RandomDntMethod method = RandomDntMethod::Coefficient);

}  // namespace dntkit
