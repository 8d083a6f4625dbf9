#include "dntkit/hermat.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

namespace dntkit {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::NonHermitianInput: return "NonHermitianInput";
    case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NTooLarge: return "NTooLarge";
    case ErrorCode::NotDoublyStochastic: return "NotDoublyStochastic";
    case ErrorCode::NoPerfectMatching: return "NoPerfectMatching";
    case ErrorCode::NotPsd: return "NotPsd";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::SingularNormalizer: return "SingularNormalizer";
    case ErrorCode::EmptyConstraintSystem: return "EmptyConstraintSystem";
    case ErrorCode::SolverFailure: return "SolverFailure";
    case ErrorCode::InstanceTooLarge: return "InstanceTooLarge";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::EntryNotPsd: return "EntryNotPsd";
    case ErrorCode::RowNotNormalized: return "RowNotNormalized";
    case ErrorCode::ColumnNotNormalized: return "ColumnNotNormalized";
    case ErrorCode::BadCardinality: return "BadCardinality";
    case ErrorCode::AsymmetricMap: return "AsymmetricMap";
    case ErrorCode::SliceNotDoublyStochastic: return "SliceNotDoublyStochastic";
    case ErrorCode::ReproductionFailure: return "ReproductionFailure";
    case ErrorCode::NotIndependent: return "NotIndependent";
    case ErrorCode::ColumnSumViolation: return "ColumnSumViolation";
    case ErrorCode::BadMarginals: return "BadMarginals";
    case ErrorCode::SinkhornNotConverged: return "SinkhornNotConverged";
    case ErrorCode::FormatError: return "FormatError";
  }
  return "Unknown";
}

std::string format_magnitude(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

namespace {

void require_finite(const CMatrix& m) {
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      if (!std::isfinite(m(r, c).real()) || !std::isfinite(m(r, c).imag())) {
        throw Error(ErrorCode::NonFinite, "matrix entry is NaN or infinite",
                    static_cast<std::size_t>(r), static_cast<std::size_t>(c));
      }
    }
  }
}

}  // namespace

ComplexMatrix::ComplexMatrix(CMatrix m) : m_(std::move(m)) {
  if (m_.rows() <= 0 || m_.cols() <= 0) {
    throw Error(ErrorCode::InvalidArgument, "matrix dimensions must be positive");
  }
  require_finite(m_);
}

ComplexMatrix ComplexMatrix::zero(Eigen::Index rows, Eigen::Index cols) {
  return ComplexMatrix(CMatrix::Zero(rows, cols));
}

ComplexMatrix ComplexMatrix::identity(Eigen::Index dim) {
  return ComplexMatrix(CMatrix::Identity(dim, dim));
}

HermitianMatrix::HermitianMatrix(const CMatrix& m) {
  if (m.rows() <= 0 || m.rows() != m.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "Hermitian matrix must be square and nonempty");
  }
  require_finite(m);
  const double defect = max_norm(m - m.adjoint());
  if (defect > kHermTol) {
    throw Error(ErrorCode::NonHermitianInput,
                "Hermiticity defect " + format_magnitude(defect) + " exceeds tolerance",
                std::nullopt, std::nullopt, defect);
  }
  m_ = (m + m.adjoint()) / 2.0;
}

HermitianMatrix HermitianMatrix::symmetrize(const CMatrix& m) {
  if (m.rows() <= 0 || m.rows() != m.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "Hermitian matrix must be square and nonempty");
  }
  require_finite(m);
  return HermitianMatrix(Trusted{}, (m + m.adjoint()) / 2.0);
}

HermitianMatrix HermitianMatrix::zero(Eigen::Index dim) {
  return HermitianMatrix(Trusted{}, CMatrix::Zero(dim, dim));
}

HermitianMatrix HermitianMatrix::identity(Eigen::Index dim) {
  return HermitianMatrix(Trusted{}, CMatrix::Identity(dim, dim));
}

HermitianMatrix& HermitianMatrix::operator+=(const HermitianMatrix& o) {
  if (o.dim() != dim()) throw Error(ErrorCode::DimensionMismatch, "operand dimensions differ");
  m_ += o.m_;
  return *this;
}

HermitianMatrix& HermitianMatrix::operator-=(const HermitianMatrix& o) {
  if (o.dim() != dim()) throw Error(ErrorCode::DimensionMismatch, "operand dimensions differ");
  m_ -= o.m_;
  return *this;
}

HermitianMatrix& HermitianMatrix::operator*=(double s) {
  m_ *= s;
  return *this;
}

HermitianMatrix operator+(HermitianMatrix a, const HermitianMatrix& b) { return a += b; }
HermitianMatrix operator-(HermitianMatrix a, const HermitianMatrix& b) { return a -= b; }
HermitianMatrix operator*(double s, HermitianMatrix a) { return a *= s; }
HermitianMatrix operator*(HermitianMatrix a, double s) { return a *= s; }

double max_norm(const CMatrix& m) {
  double out = 0.0;
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) out = std::max(out, std::abs(m(r, c)));
  }
  return out;
}

namespace {

double off_diagonal_norm(const CMatrix& a) {
  double s = 0.0;
  for (Eigen::Index c = 0; c < a.cols(); ++c) {
    for (Eigen::Index r = 0; r < a.rows(); ++r) {
      if (r != c) s += std::norm(a(r, c));
    }
  }
  return std::sqrt(s);
}

}  // namespace

Spectrum eig_hermitian(const HermitianMatrix& m) {
  const Eigen::Index d = m.dim();
  if (d > kMaxEigDim) {
    throw Error(ErrorCode::InvalidArgument, "eigendecomposition limited to d <= 64");
  }
  CMatrix a = m.mat();
  CMatrix v = CMatrix::Identity(d, d);
  const double scale = std::max(1.0, a.norm());
  constexpr int kMaxSweeps = 100;

  int sweep = 0;
  for (; sweep < kMaxSweeps; ++sweep) {
    const double off = off_diagonal_norm(a);
    if (off <= 1e-15 * scale) break;
    for (Eigen::Index p = 0; p < d - 1; ++p) {
      for (Eigen::Index q = p + 1; q < d; ++q) {
        const double apq = std::abs(a(p, q));
        if (apq == 0.0) continue;
        // Phase w makes the (p,q) entry real, then a real rotation zeroes it.
        const Complex w = std::conj(a(p, q)) / apq;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = (aqq - app) / (2.0 * apq);
        const double t =
            (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(1.0 + theta * theta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // J restricted to (p,q): [[c, s], [-s w, c w]].
        const Complex jpp = c, jpq = s, jqp = -s * w, jqq = c * w;
        for (Eigen::Index r = 0; r < d; ++r) {
          const Complex arp = a(r, p), arq = a(r, q);
          a(r, p) = arp * jpp + arq * jqp;
          a(r, q) = arp * jpq + arq * jqq;
          const Complex vrp = v(r, p), vrq = v(r, q);
          v(r, p) = vrp * jpp + vrq * jqp;
          v(r, q) = vrp * jpq + vrq * jqq;
        }
        for (Eigen::Index c2 = 0; c2 < d; ++c2) {
          const Complex apc = a(p, c2), aqc = a(q, c2);
          a(p, c2) = std::conj(jpp) * apc + std::conj(jqp) * aqc;
          a(q, c2) = std::conj(jpq) * apc + std::conj(jqq) * aqc;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
      }
    }
  }
  const double off = off_diagonal_norm(a);
  if (sweep == kMaxSweeps && off > 1e-12 * scale) {
    throw Error(ErrorCode::ConvergenceFailure, "Jacobi sweep cap reached", std::nullopt,
                std::nullopt, off);
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(d));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index x, Eigen::Index y) { return a(x, x).real() < a(y, y).real(); });
  Spectrum out;
  out.eigenvalues.reserve(static_cast<std::size_t>(d));
  CMatrix vs(d, d);
  for (Eigen::Index k = 0; k < d; ++k) {
    out.eigenvalues.push_back(a(order[k], order[k]).real());
    vs.col(k) = v.col(order[k]);
  }
  out.eigenvectors = ComplexMatrix(std::move(vs));
  return out;
}

PsdCheck is_psd(const HermitianMatrix& m, double tol) {
  if (tol < 0.0) throw Error(ErrorCode::InvalidArgument, "tolerance must be nonnegative");
  const Spectrum s = eig_hermitian(m);
  const double lo = s.eigenvalues.front();
  return {lo >= -tol, lo};
}

double frobenius_inner(const HermitianMatrix& a, const HermitianMatrix& b) {
  if (a.dim() != b.dim()) throw Error(ErrorCode::DimensionMismatch, "operand dimensions differ");
  return (a.mat().adjoint() * b.mat()).trace().real();
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const CMatrix& x = a.mat();
  const CMatrix& y = b.mat();
  CMatrix out(x.rows() * y.rows(), x.cols() * y.cols());
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
      out.block(i * y.rows(), j * y.cols(), y.rows(), y.cols()) = x(i, j) * y;
    }
  }
  return ComplexMatrix(std::move(out));
}

ComplexMatrix pauli_x() {
  CMatrix m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return ComplexMatrix(m);
}

ComplexMatrix pauli_y() {
  CMatrix m(2, 2);
  m << 0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0;
  return ComplexMatrix(m);
}

ComplexMatrix pauli_z() {
  CMatrix m(2, 2);
  m << 1.0, 0.0, 0.0, -1.0;
  return ComplexMatrix(m);
}

namespace {

template <class F>
HermitianMatrix spectral_map(const HermitianMatrix& m, F f) {
  const Spectrum s = eig_hermitian(m);
  const CMatrix& v = s.eigenvectors.mat();
  Eigen::VectorXd fl(static_cast<Eigen::Index>(s.eigenvalues.size()));
  for (std::size_t k = 0; k < s.eigenvalues.size(); ++k) {
    fl(static_cast<Eigen::Index>(k)) = f(s.eigenvalues[k]);
  }
  return HermitianMatrix::symmetrize(v * fl.asDiagonal() * v.adjoint());
}

}  // namespace

HermitianMatrix psd_sqrt(const HermitianMatrix& m) {
  return spectral_map(m, [](double x) { return std::sqrt(std::max(x, 0.0)); });
}

HermitianMatrix psd_inv_sqrt(const HermitianMatrix& m, double min_eig) {
  const Spectrum s = eig_hermitian(m);
  if (s.eigenvalues.front() < min_eig) {
    throw Error(ErrorCode::SingularNormalizer, "normalizer is numerically singular", std::nullopt,
                std::nullopt, s.eigenvalues.front());
  }
  return spectral_map(m, [](double x) { return 1.0 / std::sqrt(x); });
}

CMatrix support_basis(const HermitianMatrix& m, double threshold) {
  const Spectrum s = eig_hermitian(m);
  const auto d = static_cast<Eigen::Index>(s.eigenvalues.size());
  Eigen::Index first = 0;
  while (first < d && s.eigenvalues[static_cast<std::size_t>(first)] <= threshold) ++first;
  return s.eigenvectors.mat().rightCols(d - first);
}

Eigen::VectorXd hermitian_coords(const CMatrix& m) {
  const Eigen::Index d = m.rows();
  Eigen::VectorXd v(d * d);
  Eigen::Index k = 0;
  for (Eigen::Index a = 0; a < d; ++a) v(k++) = m(a, a).real();
  const double r2 = std::sqrt(2.0);
  for (Eigen::Index a = 0; a < d; ++a) {
    for (Eigen::Index b = a + 1; b < d; ++b) {
      v(k++) = r2 * m(a, b).real();
      v(k++) = r2 * m(a, b).imag();
    }
  }
  return v;
}

CMatrix hermitian_from_coords(const Eigen::VectorXd& v, Eigen::Index dim) {
  CMatrix m = CMatrix::Zero(dim, dim);
  Eigen::Index k = 0;
  for (Eigen::Index a = 0; a < dim; ++a) m(a, a) = v(k++);
  const double r2 = std::sqrt(2.0);
  for (Eigen::Index a = 0; a < dim; ++a) {
    for (Eigen::Index b = a + 1; b < dim; ++b) {
      const Complex z(v(k) / r2, v(k + 1) / r2);
      k += 2;
      m(a, b) = z;
      m(b, a) = std::conj(z);
    }
  }
  return m;
}

CMatrix hermitian_basis(Eigen::Index index, Eigen::Index dim) {
  Eigen::VectorXd e = Eigen::VectorXd::Zero(dim * dim);
  e(index) = 1.0;
  return hermitian_from_coords(e, dim);
}

}  // namespace dntkit
