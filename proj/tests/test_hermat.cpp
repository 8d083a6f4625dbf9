#include <doctest.h>

#include "dntkit/hermat.hpp"
#include "oracles.hpp"

using namespace dntkit;

namespace {

CMatrix mat2(Complex a, Complex b, Complex c, Complex d) {
  CMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

}  // namespace

TEST_CASE("eig_hermitian on the reference matrices") {
  SUBCASE("identity") {
    const Spectrum s = eig_hermitian(HermitianMatrix::identity(2));
    CHECK(s.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(s.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-15));
  }
  SUBCASE("sigma_x") {
    const Spectrum s = eig_hermitian(HermitianMatrix(pauli_x().mat()));
    CHECK(std::abs(s.eigenvalues[0] + 1.0) < 1e-14);
    CHECK(std::abs(s.eigenvalues[1] - 1.0) < 1e-14);
  }
  SUBCASE("(I + sigma_x)/3 against the 2x2 closed form") {
    const CMatrix a = (oracle::id(2) + oracle::sx()) / 3.0;
    const double tr = a.trace().real();
    const double det = a.determinant().real();
    const double disc = std::sqrt(tr * tr - 4 * det);
    const Spectrum s = eig_hermitian(HermitianMatrix(a));
    CHECK(std::abs(s.eigenvalues[0] - (tr - disc) / 2) < 1e-14);
    CHECK(std::abs(s.eigenvalues[1] - (tr + disc) / 2) < 1e-14);
    CHECK(std::abs(s.eigenvalues[1] - 2.0 / 3.0) < 1e-14);
  }
}

TEST_CASE("eig_hermitian agrees with an independent solver and reconstructs") {
  std::mt19937_64 rng(2024);
  for (Eigen::Index d = 1; d <= 8; ++d) {
    for (int trial = 0; trial < 10; ++trial) {
      const CMatrix m = oracle::random_hermitian(d, rng);
      const Spectrum s = eig_hermitian(HermitianMatrix(m));
      const Eigen::VectorXd ref = oracle::eigenvalues(m);
      for (Eigen::Index i = 0; i < d; ++i) {
        CHECK(std::abs(s.eigenvalues[static_cast<std::size_t>(i)] - ref(i)) < 1e-10);
      }
      CHECK(std::is_sorted(s.eigenvalues.begin(), s.eigenvalues.end()));
      const CMatrix& v = s.eigenvectors.mat();
      Eigen::VectorXd lam(d);
      for (Eigen::Index i = 0; i < d; ++i) lam(i) = s.eigenvalues[static_cast<std::size_t>(i)];
      CHECK(oracle::max_abs(v.adjoint() * v - oracle::id(d)) <= 1e-9);
      CHECK(oracle::max_abs(v * lam.asDiagonal() * v.adjoint() - m) <= 1e-9);
    }
  }
}

TEST_CASE("eig_hermitian handles larger and degenerate inputs") {
  std::mt19937_64 rng(7);
  const CMatrix m = oracle::random_hermitian(32, rng);
  const Spectrum s = eig_hermitian(HermitianMatrix(m));
  CHECK(std::abs(s.eigenvalues.front() - oracle::eigenvalues(m).minCoeff()) < 1e-9);
  const Spectrum z = eig_hermitian(HermitianMatrix::zero(3));
  for (double e : z.eigenvalues) CHECK(e == 0.0);
}

TEST_CASE("eig_hermitian is deterministic") {
  std::mt19937_64 rng(11);
  const HermitianMatrix m(oracle::random_hermitian(5, rng));
  const Spectrum a = eig_hermitian(m);
  const Spectrum b = eig_hermitian(m);
  CHECK(a.eigenvalues == b.eigenvalues);
  CHECK(a.eigenvectors.mat() == b.eigenvectors.mat());
}

TEST_CASE("Hermitian construction symmetrizes small defects and rejects large ones") {
  CMatrix m = mat2(1, Complex(0.5, 0.25), Complex(0.5, -0.25 + 5e-11), 2);
  const HermitianMatrix h(m);
  CHECK(h.mat() == h.mat().adjoint());
  CHECK(std::abs(h(1, 0).imag() + 0.25 - 2.5e-11) < 1e-15);

  m(1, 0) = Complex(0.5, -0.2);
  try {
    HermitianMatrix bad(m);
    FAIL("expected NonHermitianInput");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonHermitianInput);
  }
  CHECK_THROWS_AS(HermitianMatrix(CMatrix::Zero(2, 3)), Error);
  CMatrix nan = CMatrix::Identity(2, 2);
  nan(0, 1) = Complex(std::nan(""), 0);
  try {
    HermitianMatrix bad(nan);
    FAIL("expected NonFinite");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonFinite);
  }
}

TEST_CASE("is_psd") {
  const PsdCheck id = is_psd(HermitianMatrix::identity(2), 1e-9);
  CHECK(id.psd);
  CHECK(std::abs(id.min_eigenvalue - 1.0) < 1e-15);

  const PsdCheck a1p = is_psd(HermitianMatrix(pauli_x().mat() / 3.0), 1e-9);
  CHECK_FALSE(a1p.psd);
  CHECK(std::abs(a1p.min_eigenvalue + 1.0 / 3.0) < 1e-14);

  const PsdCheck zero = is_psd(HermitianMatrix::zero(2), 0.0);
  CHECK(zero.psd);
  CHECK(zero.min_eigenvalue == 0.0);

  SUBCASE("shifting by the smallest eigenvalue makes any matrix PSD") {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 50; ++t) {
      const Eigen::Index d = 1 + t % 6;
      const CMatrix m = oracle::random_hermitian(d, rng);
      const double lmin = oracle::min_eigenvalue(m);
      const CMatrix shifted = m + std::abs(lmin) * oracle::id(d);
      CHECK(is_psd(HermitianMatrix::symmetrize(shifted), 1e-9).psd);
    }
  }
}

TEST_CASE("frobenius_inner") {
  CHECK(frobenius_inner(HermitianMatrix::identity(2), HermitianMatrix::identity(2)) == 2.0);
  CHECK(frobenius_inner(HermitianMatrix(pauli_x().mat()), HermitianMatrix(pauli_z().mat())) == 0.0);
  const HermitianMatrix a((oracle::id(2) + oracle::sx()) / 3.0);
  CHECK(std::abs(frobenius_inner(a, a) - 4.0 / 9.0) < 1e-15);

  std::mt19937_64 rng(3);
  const HermitianMatrix x(oracle::random_hermitian(3, rng));
  const HermitianMatrix y(oracle::random_hermitian(3, rng));
  CHECK(frobenius_inner(x, y) == doctest::Approx(frobenius_inner(y, x)).epsilon(1e-14));
  CHECK(frobenius_inner(x, y) ==
        doctest::Approx((x.mat().adjoint() * y.mat()).trace().real()).epsilon(1e-13));
  CHECK_THROWS_AS(frobenius_inner(HermitianMatrix::identity(2), HermitianMatrix::identity(3)),
                  Error);
}

TEST_CASE("kron") {
  SUBCASE("E_12 (x) I") {
    CMatrix e12 = CMatrix::Zero(2, 2);
    e12(0, 1) = 1;
    const CMatrix k = kron(ComplexMatrix(e12), ComplexMatrix::identity(2)).mat();
    CMatrix expect = CMatrix::Zero(4, 4);
    expect.block(0, 2, 2, 2) = oracle::id(2);
    CHECK(k == expect);
  }
  SUBCASE("I_1 (x) M") {
    std::mt19937_64 rng(1);
    const CMatrix m = oracle::random_hermitian(3, rng);
    CHECK(kron(ComplexMatrix::identity(1), ComplexMatrix(m)).mat() == m);
  }
  SUBCASE("swap (x) diag(a, b)") {
    const CMatrix a = mat2(0.3, 0, 0, 0.7);
    const CMatrix k = kron(ComplexMatrix(oracle::sx()), ComplexMatrix(a)).mat();
    CMatrix expect = CMatrix::Zero(4, 4);
    expect.block(0, 2, 2, 2) = a;
    expect.block(2, 0, 2, 2) = a;
    CHECK(k == expect);
  }
  SUBCASE("bilinearity") {
    std::mt19937_64 rng(9);
    const CMatrix a = oracle::random_hermitian(2, rng);
    const CMatrix b = oracle::random_hermitian(2, rng);
    const CMatrix c = oracle::random_hermitian(3, rng);
    const CMatrix lhs = kron(ComplexMatrix(a + b), ComplexMatrix(c)).mat();
    const CMatrix rhs = kron(ComplexMatrix(a), ComplexMatrix(c)).mat() +
                        kron(ComplexMatrix(b), ComplexMatrix(c)).mat();
    CHECK(oracle::max_abs(lhs - rhs) <= 1e-12);
  }
}

TEST_CASE("Pauli constants are exact") {
  CHECK(pauli_x().mat() == oracle::sx());
  CHECK(pauli_y().mat() == oracle::sy());
  CHECK(pauli_z().mat() == oracle::sz());
  CHECK(HermitianMatrix::identity(2).mat() == oracle::id(2));
}

TEST_CASE("Hermitian coordinates form an orthonormal basis") {
  const Eigen::Index d = 3;
  for (Eigen::Index e = 0; e < d * d; ++e) {
    for (Eigen::Index f = 0; f < d * d; ++f) {
      const double ip = frobenius_inner(HermitianMatrix(hermitian_basis(e, d)),
                                        HermitianMatrix(hermitian_basis(f, d)));
      CHECK(std::abs(ip - (e == f ? 1.0 : 0.0)) < 1e-15);
    }
  }
  std::mt19937_64 rng(4);
  const CMatrix m = oracle::random_hermitian(d, rng);
  CHECK(oracle::max_abs(hermitian_from_coords(hermitian_coords(m), d) - m) < 1e-14);
}

TEST_CASE("psd square roots") {
  std::mt19937_64 rng(8);
  const CMatrix g = oracle::random_hermitian(3, rng);
  const HermitianMatrix p = HermitianMatrix::symmetrize(g * g + 0.1 * oracle::id(3));
  const CMatrix r = psd_sqrt(p).mat();
  CHECK(oracle::max_abs(r * r - p.mat()) < 1e-12);
  const CMatrix ir = psd_inv_sqrt(p, 1e-12).mat();
  CHECK(oracle::max_abs(ir * p.mat() * ir - oracle::id(3)) < 1e-12);
  try {
    psd_inv_sqrt(HermitianMatrix::zero(2), 1e-12);
    FAIL("expected SingularNormalizer");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SingularNormalizer);
  }
}
