#pragma once

// Classical layer: probability vectors, permutations, doubly stochastic
// matrices and the greedy Birkhoff decomposition.

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "dntkit/error.hpp"

namespace dntkit {

inline constexpr int kMaxPermutationN = 6;
inline constexpr double kZeroTol = 1e-12;
inline constexpr double kBvnResidualTol = 1e-10;

class ProbVector {
 public:
  explicit ProbVector(std::vector<double> weights);
  const std::vector<double>& weights() const { return w_; }
  std::size_t size() const { return w_.size(); }

 private:
  std::vector<double> w_;
};

/// A bijection on {0..n-1}; images()[j] is the row hit by column j. Files
/// and the CLI use 1-based images.
class Permutation {
 public:
  explicit Permutation(std::vector<int> images);
  static Permutation from_one_based(std::span<const int> images);
  static Permutation identity(int n);

  int size() const { return static_cast<int>(images_.size()); }
  int operator()(int j) const { return images_[static_cast<std::size_t>(j)]; }
  const std::vector<int>& images() const { return images_; }
  std::vector<int> one_based() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> images_;
};

class DoublyStochasticMatrix {
 public:
  // Clamps entries in [-1e-12, 0) to zero; rejects anything else that is not
  // doubly stochastic within 1e-9.
  explicit DoublyStochasticMatrix(Eigen::MatrixXd entries);
  int n() const { return static_cast<int>(m_.rows()); }
  const Eigen::MatrixXd& entries() const { return m_; }

 private:
  Eigen::MatrixXd m_;
};

struct BvnTerm {
  double weight = 0.0;
  Permutation perm;
};

struct BvnDecomposition {
  std::vector<BvnTerm> terms;
  Eigen::MatrixXd recompose(int n) const;
};

/// All n! permutations, lexicographic in images. This order defines the
/// canonical index l used throughout the library.
std::vector<Permutation> enumerate_permutations(int n);

/// Position of p in enumerate_permutations(p.size()).
std::size_t permutation_index(const Permutation& p);

std::size_t factorial(int n);

Eigen::MatrixXd perm_as_matrix(const Permutation& p);

using SupportMatrix = Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>;

/// Perfect matching on a bipartite support graph (rows x columns) by
/// augmenting paths, columns processed in order, lowest row first.
std::optional<Permutation> perfect_matching(const SupportMatrix& support);

BvnDecomposition bvn_decompose(const DoublyStochasticMatrix& d);

/// Alternating row/column normalisation of an entrywise positive matrix.
/// Returns nullopt if the defect does not fall below tol within max_iters.
std::optional<Eigen::MatrixXd> sinkhorn(Eigen::MatrixXd m, int max_iters = 10000,
                                        double tol = 1e-14);

/// Sinkhorn-normalised matrix of uniform(0.05, 1) entries drawn from seed.
DoublyStochasticMatrix random_doubly_stochastic(int n, std::uint64_t seed);

}  // namespace dntkit
