#include "dntkit/stochastic.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>
#include <string>

namespace dntkit {

ProbVector::ProbVector(std::vector<double> weights) : w_(std::move(weights)) {
  if (w_.empty()) throw Error(ErrorCode::InvalidArgument, "empty probability vector");
  double sum = 0.0;
  for (std::size_t i = 0; i < w_.size(); ++i) {
    if (!std::isfinite(w_[i])) throw Error(ErrorCode::NonFinite, "non-finite weight", i);
    if (w_[i] < -kZeroTol) {
      throw Error(ErrorCode::InvalidArgument, "negative weight", i, std::nullopt, w_[i]);
    }
    w_[i] = std::max(w_[i], 0.0);
    sum += w_[i];
  }
  if (std::abs(sum - 1.0) > 1e-10) {
    throw Error(ErrorCode::NotNormalized, "weights do not sum to one", std::nullopt, std::nullopt,
                sum - 1.0);
  }
}

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  const auto n = images_.size();
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "empty permutation");
  std::vector<bool> seen(n, false);
  for (std::size_t j = 0; j < n; ++j) {
    const int v = images_[j];
    if (v < 0 || static_cast<std::size_t>(v) >= n || seen[static_cast<std::size_t>(v)]) {
      throw Error(ErrorCode::InvalidArgument, "images are not a bijection", j);
    }
    seen[static_cast<std::size_t>(v)] = true;
  }
}

Permutation Permutation::from_one_based(std::span<const int> images) {
  std::vector<int> zero(images.begin(), images.end());
  for (int& v : zero) --v;
  return Permutation(std::move(zero));
}

Permutation Permutation::identity(int n) {
  std::vector<int> im(static_cast<std::size_t>(n));
  std::iota(im.begin(), im.end(), 0);
  return Permutation(std::move(im));
}

std::vector<int> Permutation::one_based() const {
  std::vector<int> out = images_;
  for (int& v : out) ++v;
  return out;
}

DoublyStochasticMatrix::DoublyStochasticMatrix(Eigen::MatrixXd entries) : m_(std::move(entries)) {
  if (m_.rows() == 0 || m_.rows() != m_.cols()) {
    throw Error(ErrorCode::NotDoublyStochastic, "matrix must be square and nonempty");
  }
  for (Eigen::Index j = 0; j < m_.cols(); ++j) {
    for (Eigen::Index i = 0; i < m_.rows(); ++i) {
      double& x = m_(i, j);
      if (!std::isfinite(x)) throw Error(ErrorCode::NonFinite, "non-finite entry");
      if (x < -kZeroTol) {
        throw Error(ErrorCode::NotDoublyStochastic, "negative entry", static_cast<std::size_t>(i),
                    static_cast<std::size_t>(j), x);
      }
      x = std::max(x, 0.0);
    }
  }
  for (Eigen::Index i = 0; i < m_.rows(); ++i) {
    const double r = m_.row(i).sum() - 1.0;
    if (std::abs(r) > 1e-9) {
      throw Error(ErrorCode::NotDoublyStochastic, "row " + std::to_string(i) + " sum defect",
                  static_cast<std::size_t>(i), std::nullopt, r);
    }
    const double c = m_.col(i).sum() - 1.0;
    if (std::abs(c) > 1e-9) {
      throw Error(ErrorCode::NotDoublyStochastic, "column " + std::to_string(i) + " sum defect",
                  std::nullopt, static_cast<std::size_t>(i), c);
    }
  }
}

std::size_t factorial(int n) {
  std::size_t f = 1;
  for (int k = 2; k <= n; ++k) f *= static_cast<std::size_t>(k);
  return f;
}

std::vector<Permutation> enumerate_permutations(int n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "n must be positive");
  if (n > kMaxPermutationN) {
    throw Error(ErrorCode::NTooLarge, "n! enumeration limited to n <= 6");
  }
  std::vector<int> im(static_cast<std::size_t>(n));
  std::iota(im.begin(), im.end(), 0);
  std::vector<Permutation> out;
  out.reserve(factorial(n));
  do {
    out.emplace_back(im);
  } while (std::next_permutation(im.begin(), im.end()));
  return out;
}

std::size_t permutation_index(const Permutation& p) {
  // Lehmer code.
  const int n = p.size();
  std::size_t rank = 0;
  for (int i = 0; i < n; ++i) {
    int smaller = 0;
    for (int j = i + 1; j < n; ++j) smaller += p(j) < p(i) ? 1 : 0;
    rank += static_cast<std::size_t>(smaller) * factorial(n - 1 - i);
  }
  return rank;
}

Eigen::MatrixXd perm_as_matrix(const Permutation& p) {
  const int n = p.size();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (int j = 0; j < n; ++j) m(p(j), j) = 1.0;
  return m;
}

Eigen::MatrixXd BvnDecomposition::recompose(int n) const {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (const auto& t : terms) m += t.weight * perm_as_matrix(t.perm);
  return m;
}

std::optional<Permutation> perfect_matching(const SupportMatrix& support) {
  const auto n = static_cast<int>(support.rows());
  if (n == 0 || support.cols() != n) {
    throw Error(ErrorCode::InvalidArgument, "support must be square and nonempty");
  }
  std::vector<int> col_of_row(static_cast<std::size_t>(n), -1);
  std::vector<bool> visited;

  std::function<bool(int)> augment = [&](int col) {
    // Free rows first, in index order, so uncontested columns keep the
    // lowest available row.
    for (int row = 0; row < n; ++row) {
      if (support(row, col) && !visited[static_cast<std::size_t>(row)] &&
          col_of_row[static_cast<std::size_t>(row)] < 0) {
        visited[static_cast<std::size_t>(row)] = true;
        col_of_row[static_cast<std::size_t>(row)] = col;
        return true;
      }
    }
    for (int row = 0; row < n; ++row) {
      if (!support(row, col) || visited[static_cast<std::size_t>(row)]) continue;
      visited[static_cast<std::size_t>(row)] = true;
      const int other = col_of_row[static_cast<std::size_t>(row)];
      if (other < 0 || augment(other)) {
        col_of_row[static_cast<std::size_t>(row)] = col;
        return true;
      }
    }
    return false;
  };

  for (int col = 0; col < n; ++col) {
    visited.assign(static_cast<std::size_t>(n), false);
    if (!augment(col)) return std::nullopt;
  }
  std::vector<int> images(static_cast<std::size_t>(n));
  for (int row = 0; row < n; ++row) {
    images[static_cast<std::size_t>(col_of_row[static_cast<std::size_t>(row)])] = row;
  }
  return Permutation(std::move(images));
}

BvnDecomposition bvn_decompose(const DoublyStochasticMatrix& d) {
  const int n = d.n();
  if (n > kMaxPermutationN) throw Error(ErrorCode::NTooLarge, "bvn_decompose limited to n <= 6");
  Eigen::MatrixXd residual = d.entries();
  BvnDecomposition out;
  // Each pass zeroes at least one entry, so the loop runs at most n^2 times.

  while (residual.maxCoeff() > kBvnResidualTol) {
    const SupportMatrix support = (residual.array() > kZeroTol);
    auto perm = perfect_matching(support);
    if (!perm) {
      throw Error(ErrorCode::NoPerfectMatching, "support of residual admits no perfect matching",
                  std::nullopt, std::nullopt, residual.maxCoeff());
    }
    double w = residual((*perm)(0), 0);
    for (int j = 1; j < n; ++j) w = std::min(w, residual((*perm)(j), j));
    for (int j = 0; j < n; ++j) residual((*perm)(j), j) -= w;
    residual = residual.unaryExpr([](double x) { return x <= kZeroTol ? 0.0 : x; });
    out.terms.push_back({w, std::move(*perm)});
  }
  return out;
}

std::optional<Eigen::MatrixXd> sinkhorn(Eigen::MatrixXd m, int max_iters, double tol) {
  for (int it = 0; it < max_iters; ++it) {
    m.array().colwise() /= m.rowwise().sum().array();
    m.array().rowwise() /= m.colwise().sum().array();
    const double defect = (m.rowwise().sum().array() - 1.0).abs().maxCoeff();
    if (defect <= tol) return m;
  }
  return std::nullopt;
}

DoublyStochasticMatrix random_doubly_stochastic(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.05, 1.0);
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = u(rng);
  }
  auto s = sinkhorn(std::move(m));
  if (!s) throw Error(ErrorCode::SinkhornNotConverged, "classical Sinkhorn did not converge");
  return DoublyStochasticMatrix(std::move(*s));
}

}  // namespace dntkit
