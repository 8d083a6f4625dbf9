#pragma once

// Dense complex matrices, Hermitian operators and their spectra.

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "dntkit/error.hpp"

namespace dntkit {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;

inline constexpr double kHermTol = 1e-10;
inline constexpr double kPsdTol = 1e-9;
inline constexpr int kMaxEigDim = 64;

/// A finite dense complex matrix; an element of L(H).
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  explicit ComplexMatrix(CMatrix m);

  static ComplexMatrix zero(Eigen::Index rows, Eigen::Index cols);
  static ComplexMatrix identity(Eigen::Index dim);

  Eigen::Index rows() const { return m_.rows(); }
  Eigen::Index cols() const { return m_.cols(); }
  Complex operator()(Eigen::Index r, Eigen::Index c) const { return m_(r, c); }
  const CMatrix& mat() const { return m_; }

 private:
  CMatrix m_;
};

/// A Hermitian d x d matrix. Construction rejects inputs whose Hermiticity
/// defect ||M - M^dagger||_max exceeds kHermTol and stores (M + M^dagger)/2.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;
  explicit HermitianMatrix(const CMatrix& m);
  explicit HermitianMatrix(const ComplexMatrix& m) : HermitianMatrix(m.mat()) {}

  // Symmetrizes without the defect check. For values that are Hermitian by
  // construction up to rounding (products V D V^dagger, solver blocks).
  static HermitianMatrix symmetrize(const CMatrix& m);

  static HermitianMatrix zero(Eigen::Index dim);
  static HermitianMatrix identity(Eigen::Index dim);

  Eigen::Index dim() const { return m_.rows(); }
  const CMatrix& mat() const { return m_; }
  ComplexMatrix matrix() const { return ComplexMatrix(m_); }
  Complex operator()(Eigen::Index r, Eigen::Index c) const { return m_(r, c); }
  double trace() const { return m_.trace().real(); }

  HermitianMatrix& operator+=(const HermitianMatrix& o);
  HermitianMatrix& operator-=(const HermitianMatrix& o);
  HermitianMatrix& operator*=(double s);

 private:
  struct Trusted {};
  HermitianMatrix(Trusted, CMatrix m) : m_(std::move(m)) {}
  CMatrix m_;
};

HermitianMatrix operator+(HermitianMatrix a, const HermitianMatrix& b);
HermitianMatrix operator-(HermitianMatrix a, const HermitianMatrix& b);
HermitianMatrix operator*(double s, HermitianMatrix a);
HermitianMatrix operator*(HermitianMatrix a, double s);

struct Spectrum {
  std::vector<double> eigenvalues;  // nondecreasing
  ComplexMatrix eigenvectors;       // columns, orthonormal
};

/// Cyclic Jacobi eigendecomposition. Deterministic for identical input bits.
Spectrum eig_hermitian(const HermitianMatrix& m);

struct PsdCheck {
  bool psd = false;
  double min_eigenvalue = 0.0;
  explicit operator bool() const { return psd; }
};

PsdCheck is_psd(const HermitianMatrix& m, double tol = kPsdTol);

/// Re tr(a^dagger b).
double frobenius_inner(const HermitianMatrix& a, const HermitianMatrix& b);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

double max_norm(const CMatrix& m);

ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();

// Spectral calculus helpers for PSD inputs.
HermitianMatrix psd_sqrt(const HermitianMatrix& m);
// S^{-1/2}; throws SingularNormalizer if an eigenvalue is below min_eig.
HermitianMatrix psd_inv_sqrt(const HermitianMatrix& m, double min_eig);
// Orthonormal basis (d x r) of the eigenspaces with eigenvalue > threshold.
CMatrix support_basis(const HermitianMatrix& m, double threshold = kPsdTol);

// Coordinates in the orthonormal basis {E_aa, (E_ab+E_ba)/sqrt2, i(E_ab-E_ba)/sqrt2}
// of the real space of d x d Hermitian matrices; isometric w.r.t. frobenius_inner.
Eigen::VectorXd hermitian_coords(const CMatrix& m);
CMatrix hermitian_from_coords(const Eigen::VectorXd& v, Eigen::Index dim);
// The basis element with the given coordinate index.
CMatrix hermitian_basis(Eigen::Index index, Eigen::Index dim);

}  // namespace dntkit
