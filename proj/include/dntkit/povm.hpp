#pragma once

// Quantum measurements, post-processing maps and mother measurements.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "dntkit/hermat.hpp"

namespace dntkit {

/// n PSD operators on C^d summing to the identity.
class Povm {
 public:
  Povm() = default;
  // Same checks as povm_validate.
  explicit Povm(std::vector<HermitianMatrix> elements);

  Eigen::Index dim() const { return elements_.front().dim(); }
  std::size_t size() const { return elements_.size(); }
  const HermitianMatrix& operator[](std::size_t i) const { return elements_[i]; }
  const std::vector<HermitianMatrix>& elements() const { return elements_; }

 private:
  std::vector<HermitianMatrix> elements_;
};

/// Throws NotPsd(index, min_eig) or NotNormalized(defect) for the first
/// violated condition.
Povm povm_validate(std::vector<HermitianMatrix> candidate);

/// Largest max-norm deviation of sum(elements) from the identity.
double normalization_defect(std::span<const HermitianMatrix> elements);

/// Dense conditional distributions mu(j | measurement i, mother outcome k).
class PostProcessingMap {
 public:
  PostProcessingMap(std::size_t m, std::size_t n, std::size_t k, std::vector<double> probs);
  static PostProcessingMap zeros_unchecked(std::size_t m, std::size_t n, std::size_t k);

  std::size_t num_measurements() const { return m_; }
  std::size_t num_outcomes() const { return n_; }
  std::size_t num_mother_outcomes() const { return k_; }
  double operator()(std::size_t i, std::size_t j, std::size_t k) const {
    return p_[(i * n_ + j) * k_ + k];
  }
  const std::vector<double>& probs() const { return p_; }

 private:
  PostProcessingMap(std::size_t m, std::size_t n, std::size_t k)
      : m_(m), n_(n), k_(k), p_(m * n * k, 0.0) {}
  std::size_t m_, n_, k_;
  std::vector<double> p_;
};

struct MotherMeasurement {
  Povm mother;
  PostProcessingMap map;
};

/// The i-th measurement obtained by post-processing the mother.
Povm apply_post_processing(const MotherMeasurement& m, std::size_t i);

/// Largest max-norm error of reproducing targets[i] through the mother.
double reproduction_error(const MotherMeasurement& m, std::span<const Povm> targets);

struct ExtremalityReport {
  bool extremal = false;
  std::size_t kernel_dimension = 0;
  explicit operator bool() const { return extremal; }
};

/// Kernel test of (D_1..D_n) -> sum D_i over Hermitian D_i supported on
/// supp(A_i).
ExtremalityReport povm_is_extremal(const Povm& p);

/// Number of elements with max-norm above 1e-9.
std::size_t count_non_null(const Povm& p);

/// Ginibre construction S^{-1/2} G_i G_i^dagger S^{-1/2}.
Povm random_povm(std::size_t n, Eigen::Index d, std::uint64_t seed);

/// Linear independence over the reals, singular-value threshold 1e-9.
bool linear_independence(std::span<const HermitianMatrix> ops);

/// Numerical rank of a real matrix, singular-value threshold `threshold`.
Eigen::Index numerical_rank(const Eigen::MatrixXd& m, double threshold = 1e-9);

// Rescales PSD operators by S^{-1/2} (.) S^{-1/2}, S = sum, so they sum to I.
std::vector<HermitianMatrix> renormalize(std::span<const HermitianMatrix> ops);

/// Digits of k in base n, most significant first: the outcome tuple
/// (k_1, ..., k_m) indexed lexicographically.
std::vector<std::size_t> outcome_tuple(std::size_t k, std::size_t n, std::size_t m);

/// n^m, or nullopt if it exceeds cap.
std::optional<std::size_t> checked_power(std::size_t n, std::size_t m, std::size_t cap);

}  // namespace dntkit
