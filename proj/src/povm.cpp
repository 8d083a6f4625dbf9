#include "dntkit/povm.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

namespace dntkit {

double normalization_defect(std::span<const HermitianMatrix> elements) {
  const Eigen::Index d = elements.front().dim();
  CMatrix s = CMatrix::Zero(d, d);
  for (const auto& e : elements) s += e.mat();
  return max_norm(s - CMatrix::Identity(d, d));
}

Povm::Povm(std::vector<HermitianMatrix> elements) : elements_(std::move(elements)) {
  if (elements_.empty()) throw Error(ErrorCode::InvalidArgument, "POVM needs at least one element");
  const Eigen::Index d = elements_.front().dim();
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    if (elements_[i].dim() != d) {
      throw Error(ErrorCode::DimensionMismatch, "POVM elements have different dimensions", i);
    }
    const PsdCheck c = is_psd(elements_[i]);
    if (!c) {
      throw Error(
          ErrorCode::NotPsd,
          "element " + std::to_string(i) + " has eigenvalue " + format_magnitude(c.min_eigenvalue),
          i, std::nullopt, c.min_eigenvalue);
    }
  }
  const double defect = normalization_defect(elements_);
  if (defect > kPsdTol) {
    throw Error(ErrorCode::NotNormalized,
                "elements sum to identity only within " + format_magnitude(defect), std::nullopt,
                std::nullopt, defect);
  }
}

Povm povm_validate(std::vector<HermitianMatrix> candidate) { return Povm(std::move(candidate)); }

PostProcessingMap::PostProcessingMap(std::size_t m, std::size_t n, std::size_t k,
                                     std::vector<double> probs)
    : m_(m), n_(n), k_(k), p_(std::move(probs)) {
  if (m == 0 || n == 0 || k == 0) {
    throw Error(ErrorCode::InvalidArgument, "post-processing map dimensions must be positive");
  }
  if (p_.size() != m * n * k) {
    throw Error(ErrorCode::DimensionMismatch, "probability table has wrong length");
  }
  for (double& x : p_) {
    if (!std::isfinite(x)) throw Error(ErrorCode::NonFinite, "non-finite probability");
    if (x < -1e-12) {
      throw Error(ErrorCode::InvalidArgument, "negative probability", std::nullopt, std::nullopt,
                  x);
    }
    x = std::max(x, 0.0);
  }
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t kk = 0; kk < k; ++kk) {
      double s = 0.0;
      for (std::size_t j = 0; j < n; ++j) s += (*this)(i, j, kk);
      if (std::abs(s - 1.0) > 1e-10) {
        throw Error(
            ErrorCode::NotNormalized,
            "mu(.|" + std::to_string(i) + "," + std::to_string(kk) + ") does not sum to one", i, kk,
            s - 1.0);
      }
    }
  }
}

PostProcessingMap PostProcessingMap::zeros_unchecked(std::size_t m, std::size_t n, std::size_t k) {
  return PostProcessingMap(m, n, k);
}

Povm apply_post_processing(const MotherMeasurement& m, std::size_t i) {
  const auto& map = m.map;
  if (i >= map.num_measurements()) {
    throw Error(ErrorCode::IndexOutOfRange, "measurement index out of range", i);
  }
  if (map.num_mother_outcomes() != m.mother.size()) {
    throw Error(ErrorCode::DimensionMismatch, "map and mother disagree on outcome count");
  }
  const Eigen::Index d = m.mother.dim();
  std::vector<HermitianMatrix> out;
  out.reserve(map.num_outcomes());
  for (std::size_t j = 0; j < map.num_outcomes(); ++j) {
    HermitianMatrix acc = HermitianMatrix::zero(d);
    for (std::size_t k = 0; k < map.num_mother_outcomes(); ++k) {
      const double w = map(i, j, k);
      if (w != 0.0) acc += w * m.mother[k];
    }
    out.push_back(std::move(acc));
  }
  return povm_validate(std::move(out));
}

double reproduction_error(const MotherMeasurement& m, std::span<const Povm> targets) {
  if (targets.size() != m.map.num_measurements()) {
    throw Error(ErrorCode::DimensionMismatch, "target count differs from map measurements");
  }
  double err = 0.0;
  const Eigen::Index d = m.mother.dim();
  for (std::size_t i = 0; i < targets.size(); ++i) {
    if (targets[i].size() != m.map.num_outcomes()) {
      throw Error(ErrorCode::DimensionMismatch, "target outcome count differs from map", i);
    }
    for (std::size_t j = 0; j < m.map.num_outcomes(); ++j) {
      CMatrix acc = CMatrix::Zero(d, d);
      for (std::size_t k = 0; k < m.map.num_mother_outcomes(); ++k) {
        acc += m.map(i, j, k) * m.mother[k].mat();
      }
      err = std::max(err, max_norm(acc - targets[i][j].mat()));
    }
  }
  return err;
}

Eigen::Index numerical_rank(const Eigen::MatrixXd& m, double threshold) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& s = svd.singularValues();
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) r += s(i) > threshold ? 1 : 0;
  return r;
}

ExtremalityReport povm_is_extremal(const Povm& p) {
  const Eigen::Index d = p.dim();
  if (d > 8 || p.size() > 16) {
    throw Error(ErrorCode::InvalidArgument, "extremality test limited to d <= 8, n <= 16");
  }
  // Columns: images of the Hermitian basis of each support, in coordinates.
  std::vector<Eigen::VectorXd> cols;
  for (const auto& a : p.elements()) {
    const CMatrix v = support_basis(a);
    const Eigen::Index r = v.cols();
    for (Eigen::Index e = 0; e < r * r; ++e) {
      cols.push_back(hermitian_coords(v * hermitian_basis(e, r) * v.adjoint()));
    }
  }
  const auto params = static_cast<Eigen::Index>(cols.size());
  Eigen::MatrixXd map(d * d, params);
  for (Eigen::Index c = 0; c < params; ++c) map.col(c) = cols[static_cast<std::size_t>(c)];
  const Eigen::Index rank = numerical_rank(map);
  const auto kernel = static_cast<std::size_t>(params - rank);
  return {kernel == 0, kernel};
}

std::size_t count_non_null(const Povm& p) {
  return static_cast<std::size_t>(
      std::count_if(p.elements().begin(), p.elements().end(),
                    [](const HermitianMatrix& a) { return max_norm(a.mat()) > kPsdTol; }));
}

std::vector<HermitianMatrix> renormalize(std::span<const HermitianMatrix> ops) {
  const Eigen::Index d = ops.front().dim();
  HermitianMatrix s = HermitianMatrix::zero(d);
  for (const auto& o : ops) s += o;
  const CMatrix t = psd_inv_sqrt(s, 1e-12).mat();
  std::vector<HermitianMatrix> out;
  out.reserve(ops.size());
  for (const auto& o : ops) out.push_back(HermitianMatrix::symmetrize(t * o.mat() * t));
  return out;
}

Povm random_povm(std::size_t n, Eigen::Index d, std::uint64_t seed) {
  if (n < 1 || d < 1 || d > 8) {
    throw Error(ErrorCode::InvalidArgument, "random_povm requires n >= 1 and 1 <= d <= 8");
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  constexpr int kRetries = 8;
  for (int attempt = 0; attempt <= kRetries; ++attempt) {
    std::vector<HermitianMatrix> w;
    w.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      CMatrix g(d, d);
      for (Eigen::Index c = 0; c < d; ++c) {
        for (Eigen::Index r = 0; r < d; ++r) {
          const double re = gauss(rng);
          const double im = gauss(rng);
          g(r, c) = Complex(re, im) / std::sqrt(2.0);
        }
      }
      w.push_back(HermitianMatrix::symmetrize(g * g.adjoint()));
    }
    try {
      return Povm(renormalize(w));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::SingularNormalizer) throw;
    }
  }
  throw Error(ErrorCode::SingularNormalizer, "random_povm exhausted its retries");
}

bool linear_independence(std::span<const HermitianMatrix> ops) {
  if (ops.empty()) return true;
  const Eigen::Index d = ops.front().dim();
  Eigen::MatrixXd m(d * d, static_cast<Eigen::Index>(ops.size()));
  for (std::size_t i = 0; i < ops.size(); ++i) {
    if (ops[i].dim() != d) throw Error(ErrorCode::DimensionMismatch, "operator dims differ", i);
    m.col(static_cast<Eigen::Index>(i)) = hermitian_coords(ops[i].mat());
  }
  return numerical_rank(m) == static_cast<Eigen::Index>(ops.size());
}

std::vector<std::size_t> outcome_tuple(std::size_t k, std::size_t n, std::size_t m) {
  std::vector<std::size_t> t(m);
  for (std::size_t i = m; i-- > 0;) {
    t[i] = k % n;
    k /= n;
  }
  return t;
}

std::optional<std::size_t> checked_power(std::size_t n, std::size_t m, std::size_t cap) {
  std::size_t p = 1;
  for (std::size_t i = 0; i < m; ++i) {
    if (p > cap / std::max<std::size_t>(n, 1)) return std::nullopt;
    p *= n;
  }
  return p <= cap ? std::optional<std::size_t>(p) : std::nullopt;
}

}  // namespace dntkit
