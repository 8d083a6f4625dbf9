#include <doctest.h>

#include <set>

#include "dntkit/stochastic.hpp"
#include "oracles.hpp"

using namespace dntkit;

TEST_CASE("ProbVector clamps tiny negatives and checks the sum") {
  const ProbVector p({0.5, 0.5 + 5e-13, -5e-13});
  CHECK(p.weights()[2] == 0.0);
  CHECK_THROWS_AS(ProbVector({0.5, 0.4}), Error);
  CHECK_THROWS_AS(ProbVector({1.1, -0.1}), Error);
}

TEST_CASE("enumerate_permutations is lexicographic") {
  CHECK(enumerate_permutations(1).size() == 1);
  const auto two = enumerate_permutations(2);
  REQUIRE(two.size() == 2);
  CHECK(two[0].one_based() == std::vector<int>{1, 2});
  CHECK(two[1].one_based() == std::vector<int>{2, 1});
  const auto three = enumerate_permutations(3);
  REQUIRE(three.size() == 6);
  CHECK(three.front().one_based() == std::vector<int>{1, 2, 3});
  CHECK(three.back().one_based() == std::vector<int>{3, 2, 1});

  for (int n = 1; n <= 6; ++n) {
    const auto perms = enumerate_permutations(n);
    const auto ref = oracle::permutations(n);
    REQUIRE(perms.size() == ref.size());
    for (std::size_t l = 0; l < perms.size(); ++l) {
      CHECK(perms[l].images() == ref[l]);
      CHECK(permutation_index(perms[l]) == l);
    }
  }
  try {
    enumerate_permutations(7);
    FAIL("expected NTooLarge");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NTooLarge);
  }
}

TEST_CASE("perm_as_matrix") {
  CHECK(perm_as_matrix(Permutation::from_one_based(std::vector<int>{1, 2})) ==
        Eigen::MatrixXd::Identity(2, 2));
  Eigen::MatrixXd swap(2, 2);
  swap << 0, 1, 1, 0;
  CHECK(perm_as_matrix(Permutation::from_one_based(std::vector<int>{2, 1})) == swap);
  const Eigen::MatrixXd cyc =
      perm_as_matrix(Permutation::from_one_based(std::vector<int>{2, 3, 1}));
  Eigen::MatrixXd expect = Eigen::MatrixXd::Zero(3, 3);
  expect(1, 0) = 1;
  expect(2, 1) = 1;
  expect(0, 2) = 1;
  CHECK(cyc == expect);

  SUBCASE("distinct permutations give distinct matrices") {
    for (int n = 1; n <= 4; ++n) {
      const auto perms = enumerate_permutations(n);
      for (std::size_t a = 0; a < perms.size(); ++a) {
        for (std::size_t b = a + 1; b < perms.size(); ++b) {
          CHECK(perm_as_matrix(perms[a]) != perm_as_matrix(perms[b]));
        }
      }
    }
  }
}

TEST_CASE("Permutation rejects non-bijections") {
  CHECK_THROWS_AS(Permutation(std::vector<int>{0, 0}), Error);
  CHECK_THROWS_AS(Permutation::from_one_based(std::vector<int>{1, 3}), Error);
}

TEST_CASE("DoublyStochasticMatrix validation") {
  Eigen::MatrixXd ok(2, 2);
  ok << 0.7, 0.3, 0.3, 0.7;
  CHECK_NOTHROW(DoublyStochasticMatrix{ok});
  Eigen::MatrixXd bad = ok;
  bad(0, 0) = 0.8;
  try {
    DoublyStochasticMatrix d(bad);
    FAIL("expected NotDoublyStochastic");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotDoublyStochastic);
  }
}

TEST_CASE("perfect matching") {
  SupportMatrix full = SupportMatrix::Constant(2, 2, true);
  auto m = perfect_matching(full);
  REQUIRE(m);
  CHECK(*m == Permutation::identity(2));

  SupportMatrix diag = SupportMatrix::Constant(3, 3, false);
  for (int i = 0; i < 3; ++i) diag(i, i) = true;
  m = perfect_matching(diag);
  REQUIRE(m);
  CHECK(*m == Permutation::identity(3));

  SupportMatrix hole = SupportMatrix::Constant(3, 3, true);
  hole.row(1).setConstant(false);
  CHECK_FALSE(perfect_matching(hole));

  SupportMatrix anti = SupportMatrix::Constant(3, 3, false);
  for (int i = 0; i < 3; ++i) anti(2 - i, i) = true;
  m = perfect_matching(anti);
  REQUIRE(m);
  CHECK(m->one_based() == std::vector<int>{3, 2, 1});
}

TEST_CASE("bvn_decompose examples") {
  SUBCASE("a permutation matrix is a single term") {
    const auto p = Permutation::from_one_based(std::vector<int>{3, 1, 2});
    const BvnDecomposition b = bvn_decompose(DoublyStochasticMatrix(perm_as_matrix(p)));
    REQUIRE(b.terms.size() == 1);
    CHECK(b.terms[0].weight == 1.0);
    CHECK(b.terms[0].perm == p);
  }
  SUBCASE("uniform 3x3") {
    const BvnDecomposition b =
        bvn_decompose(DoublyStochasticMatrix(Eigen::MatrixXd::Constant(3, 3, 1.0 / 3)));
    REQUIRE(b.terms.size() == 3);
    for (const auto& t : b.terms) CHECK(std::abs(t.weight - 1.0 / 3) < 1e-15);
    for (std::size_t a = 0; a < 3; ++a) {
      for (std::size_t c = a + 1; c < 3; ++c) {
        for (int j = 0; j < 3; ++j) CHECK(b.terms[a].perm(j) != b.terms[c].perm(j));
      }
    }
    CHECK((b.recompose(3).array() - 1.0 / 3).abs().maxCoeff() <= 1e-15);
  }
  SUBCASE("n = 2 closed form") {
    Eigen::MatrixXd m(2, 2);
    m << 0.7, 0.3, 0.3, 0.7;
    const BvnDecomposition b = bvn_decompose(DoublyStochasticMatrix(m));
    REQUIRE(b.terms.size() == 2);
    CHECK(b.terms[0].perm == Permutation::identity(2));
    CHECK(std::abs(b.terms[0].weight - 0.7) < 1e-15);
    CHECK(b.terms[1].perm.one_based() == std::vector<int>{2, 1});
    CHECK(std::abs(b.terms[1].weight - 0.3) < 1e-15);
  }
}

TEST_CASE("bvn_decompose on seeded random doubly stochastic matrices") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const int n = 2 + static_cast<int>(seed % 5);
    const DoublyStochasticMatrix d = random_doubly_stochastic(n, seed);
    const BvnDecomposition b = bvn_decompose(d);
    // Recompose independently of BvnDecomposition::recompose.
    Eigen::MatrixXd r = Eigen::MatrixXd::Zero(n, n);
    double total = 0.0;
    for (const auto& t : b.terms) {
      CHECK(t.weight > 1e-12);
      total += t.weight;
      for (int j = 0; j < n; ++j) r(t.perm.images()[static_cast<std::size_t>(j)], j) += t.weight;
    }
    CHECK(std::abs(total - 1.0) <= 1e-10);
    CHECK((r - d.entries()).cwiseAbs().maxCoeff() <= 1e-10);
    CHECK(b.terms.size() <= static_cast<std::size_t>((n - 1) * (n - 1) + 1));
  }
}

TEST_CASE("bvn_decompose handles sparse supports") {
  // Mixture of three permutations with overlapping supports.
  const auto perms = enumerate_permutations(4);
  const Eigen::MatrixXd m = 0.5 * perm_as_matrix(perms[3]) + 0.25 * perm_as_matrix(perms[10]) +
                            0.25 * perm_as_matrix(perms[17]);
  const BvnDecomposition b = bvn_decompose(DoublyStochasticMatrix(m));
  CHECK((b.recompose(4) - m).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK(b.terms.size() <= 10);
}

TEST_CASE("random doubly stochastic matrices are reproducible") {
  CHECK(random_doubly_stochastic(4, 9).entries() == random_doubly_stochastic(4, 9).entries());
  CHECK(random_doubly_stochastic(4, 9).entries() != random_doubly_stochastic(4, 10).entries());
}
