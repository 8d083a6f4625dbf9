#include <doctest.h>

#include "dntkit/jointmeas.hpp"
#include "oracles.hpp"

using namespace dntkit;

namespace {

std::vector<HermitianMatrix> herm(const std::vector<CMatrix>& ms) {
  std::vector<HermitianMatrix> out;
  for (const auto& m : ms) out.emplace_back(m);
  return out;
}

Povm projective(const CMatrix& pauli) {
  return Povm(herm({(oracle::id(2) + pauli) / 2.0, (oracle::id(2) - pauli) / 2.0}));
}

Povm trivial(std::size_t n, Eigen::Index d) {
  return Povm(
      std::vector<HermitianMatrix>(n, HermitianMatrix::symmetrize(oracle::id(d) / double(n))));
}

// Oracle check of a certificate: PSD elements summing to I, and marginals
// k_i = j reproducing every input.
double certificate_error(const MotherMeasurement& m, const std::vector<Povm>& targets) {
  const std::size_t n = targets.front().size();
  const std::size_t count = targets.size();
  const Eigen::Index d = targets.front().dim();
  double err = 0.0;
  CMatrix sum = -oracle::id(d);
  for (const auto& g : m.mother.elements()) {
    err = std::max(err, -oracle::min_eigenvalue(g.mat()));
    sum += g.mat();
  }
  err = std::max(err, oracle::max_abs(sum));
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      CMatrix acc = CMatrix::Zero(d, d);
      for (std::size_t k = 0; k < m.mother.size(); ++k) {
        if (oracle::digits(k, n, count)[i] == j) acc += m.mother[k].mat();
      }
      err = std::max(err, oracle::max_abs(acc - targets[i][j].mat()));
    }
  }
  return err;
}

}  // namespace

TEST_CASE("JmInstance validation") {
  CHECK_THROWS_AS(JmInstance({projective(oracle::sz()), trivial(3, 2)}), Error);
  CHECK_THROWS_AS(JmInstance({projective(oracle::sz()), trivial(2, 3)}), Error);
  std::vector<Povm> many(13, projective(oracle::sz()));
  try {
    JmInstance inst(many);
    FAIL("expected InstanceTooLarge");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InstanceTooLarge);
  }
  CHECK(JmInstance(std::vector<Povm>(12, projective(oracle::sz()))).num_joint_outcomes() == 4096);
}

TEST_CASE("two copies of the same POVM are compatible") {
  const Povm t(herm(oracle::trine()));
  const std::vector<Povm> pair = {t, t};
  const JmVerdict v = jm_check(JmInstance(pair));
  CHECK(v.compatible);
  CHECK(v.robustness >= 1.0 - 1e-6);
  REQUIRE(v.mother);
  CHECK(certificate_error(*v.mother, pair) <= 1e-7);
  CHECK(reproduction_error(*v.mother, pair) <= 1e-7);
}

TEST_CASE("a single POVM is its own mother") {
  const Povm p = random_povm(3, 2, 5);
  const JmVerdict v = jm_check(JmInstance({p}));
  CHECK(v.compatible);
  REQUIRE(v.mother);
  for (std::size_t j = 0; j < 3; ++j)
    CHECK(oracle::max_abs(v.mother->mother[j].mat() - p[j].mat()) <= 1e-7);
}

TEST_CASE("the three trine rows are incompatible") {
  const auto t = oracle::trine();
  const CMatrix a1p = oracle::sx() / 3.0, a1pp = oracle::id(2) / 3.0;
  const std::vector<Povm> rows = {Povm(herm({t[0], t[1], t[2]})),
                                  Povm(herm({t[1], a1p + t[2], a1pp})),
                                  Povm(herm({t[2], a1pp, a1p + t[1]}))};
  for (bool pc : {false, true}) {
    SdpOptions o;
    o.predictor_corrector = pc;
    const JmVerdict v = jm_check(JmInstance(rows), 1e-6, o);
    CHECK_FALSE(v.compatible);
    CHECK(v.robustness <= 1.0 - 1e-3);
    CHECK_FALSE(v.mother);
    CHECK(v.solver_status == SdpStatus::Optimal);
  }
}

TEST_CASE("unbiased qubit measurements have robustness 1/sqrt(2)") {
  // Known closed form for two unbiased projective qubit measurements.
  const JmVerdict v = jm_check(JmInstance({projective(oracle::sz()), projective(oracle::sx())}));
  CHECK_FALSE(v.compatible);
  CHECK(std::abs(v.robustness - 1.0 / std::sqrt(2.0)) <= 1e-6);
  // Three mutually unbiased: 1/sqrt(3).
  const JmVerdict w = jm_check(
      JmInstance({projective(oracle::sz()), projective(oracle::sx()), projective(oracle::sy())}));
  CHECK(std::abs(w.robustness - 1.0 / std::sqrt(3.0)) <= 1e-6);
}

TEST_CASE("noisy measurements below the threshold are compatible") {
  const double eta = 0.7;
  auto noisy = [&](const CMatrix& s) {
    return Povm(herm({(oracle::id(2) + eta * s) / 2.0, (oracle::id(2) - eta * s) / 2.0}));
  };
  const std::vector<Povm> inst = {noisy(oracle::sz()), noisy(oracle::sx())};
  const JmVerdict v = jm_check(JmInstance(inst));
  CHECK(v.compatible);
  REQUIRE(v.mother);
  CHECK(certificate_error(*v.mother, inst) <= 1e-7);
}

TEST_CASE("adding a trivial POVM never decreases robustness") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const std::vector<Povm> base = {random_povm(2, 2, seed), random_povm(2, 2, seed + 50)};
    std::vector<Povm> extended = base;
    extended.push_back(trivial(2, 2));
    const double a = jm_check(JmInstance(base)).robustness;
    const double b = jm_check(JmInstance(extended)).robustness;
    CHECK(b >= a - 1e-6);
    CHECK(a >= 0.0);
  }
}

TEST_CASE("noise POVMs are compatible through the product construction") {
  const std::vector<Povm> inst = {random_povm(3, 2, 1), random_povm(3, 2, 2)};
  std::vector<Povm> noise;
  for (const auto& p : inst) {
    std::vector<CMatrix> el;
    for (const auto& a : p.elements()) el.push_back(a.trace() / 2.0 * oracle::id(2));
    noise.push_back(Povm(herm(el)));
  }
  // G_k = prod_i tr(A^(i)_{k_i})/d I.
  std::vector<HermitianMatrix> g;
  for (std::size_t k = 0; k < 9; ++k) {
    const auto t = oracle::digits(k, 3, 2);
    const double w = inst[0][t[0]].trace() / 2.0 * inst[1][t[1]].trace() / 2.0;
    g.push_back(HermitianMatrix::symmetrize(w * oracle::id(2)));
  }
  const MotherMeasurement m{Povm(g), marginal_map(2, 3)};
  CHECK(certificate_error(m, noise) <= 1e-14);
  CHECK(jm_check(JmInstance(noise)).compatible);
}

TEST_CASE("marginal_operator") {
  const Povm p = random_povm(3, 2, 9);
  for (std::size_t j = 0; j < 3; ++j) {
    CHECK(marginal_operator(p.elements(), 3, 1, 0, j).mat() == p[j].mat());
  }
  // Products of commuting diagonal projectors.
  CMatrix e0 = CMatrix::Zero(2, 2), e1 = CMatrix::Zero(2, 2);
  e0(0, 0) = 1;
  e1(1, 1) = 1;
  const std::vector<HermitianMatrix> g = herm({e0 * e1, e0 * e0, e1 * e1, e1 * e0});
  // First POVM (e0, e1), second (e1, e0).
  CHECK(marginal_operator(g, 2, 2, 0, 0).mat() == e0);
  CHECK(marginal_operator(g, 2, 2, 0, 1).mat() == e1);
  CHECK(marginal_operator(g, 2, 2, 1, 0).mat() == e1);
  CHECK(marginal_operator(g, 2, 2, 1, 1).mat() == e0);
  const std::vector<HermitianMatrix> zeros(4, HermitianMatrix::zero(2));
  CHECK(marginal_operator(zeros, 2, 2, 1, 0).mat() == CMatrix::Zero(2, 2));
  try {
    marginal_operator(g, 2, 2, 2, 0);
    FAIL("expected IndexOutOfRange");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::IndexOutOfRange);
  }
}
