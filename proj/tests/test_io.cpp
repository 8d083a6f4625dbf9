#include <doctest.h>

#include <functional>
#include <regex>

#include "dntkit/io.hpp"
#include "oracles.hpp"

using namespace dntkit;
using io::Json;

namespace {

ErrorCode code_of(const std::function<void()>& f, std::string* message = nullptr) {
  try {
    f();
  } catch (const Error& e) {
    if (message) *message = e.what();
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InvalidArgument;
}

// Every float written by dump has 17 significant digits unless it is an
// exact short value.
void check_full_precision(double v) {
  const std::string s = io::dump(Json(v));
  CHECK(std::stod(s) == v);
}

}  // namespace

TEST_CASE("matrix round trip is bit exact") {
  std::mt19937_64 rng(4);
  for (Eigen::Index d = 1; d <= 4; ++d) {
    const CMatrix m = oracle::random_hermitian(d, rng) / 3.0;
    const Json j = io::parse(io::dump(io::matrix_to_json(m)));
    CHECK(io::matrix_from_json(j) == m);
  }
  // Real entries may be written as plain numbers.
  const Json j = {{"rows", 1}, {"cols", 2}, {"data", {0.25, {0.5, -1.0}}}};
  const CMatrix m = io::matrix_from_json(j);
  CHECK(m(0, 0) == Complex(0.25, 0));
  CHECK(m(0, 1) == Complex(0.5, -1.0));
}

TEST_CASE("dump writes 17 significant digits") {
  check_full_precision(1.0 / 3.0);
  check_full_precision(std::sqrt(2.0));
  check_full_precision(1e-300 / 7.0);
  CHECK(io::dump(Json(1.0 / 3.0)) == "0.33333333333333331\n");
  CHECK(io::dump(Json(0.5)) == "0.5\n");
  CHECK(io::dump(Json(3)) == "3\n");
}

TEST_CASE("POVM, DNT and decomposition round trips") {
  const Povm p = random_povm(4, 3, 8);
  const Povm q = io::povm_from_json(io::parse(io::dump(io::povm_to_json(p))));
  REQUIRE(q.size() == p.size());
  for (std::size_t i = 0; i < p.size(); ++i) CHECK(q[i].mat() == p[i].mat());

  const Dnt d = build_trine_dnt();
  const Dnt e = io::dnt_from_json(io::parse(io::dump(io::dnt_to_json(d))));
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) CHECK(e(i, j).mat() == d(i, j).mat());
  }

  const PermutationDecomposition dec{3, random_povm(6, 2, 1)};
  const auto back =
      io::decomposition_from_json(io::parse(io::dump(io::decomposition_to_json(dec))));
  CHECK(back.n == 3);
  for (std::size_t l = 0; l < 6; ++l)
    CHECK(back.coefficients[l].mat() == dec.coefficients[l].mat());

  const JmInstance inst({random_povm(2, 2, 3), random_povm(2, 2, 4)});
  const JmInstance inst2 = io::instance_from_json(io::parse(io::dump(io::instance_to_json(inst))));
  CHECK(inst2.povms().size() == 2);
  CHECK(inst2.povms()[1][0].mat() == inst.povms()[1][0].mat());

  const PostProcessingMap m = marginal_map(2, 3);
  const PostProcessingMap m2 = io::map_from_json(io::parse(io::dump(io::map_to_json(m))));
  for (std::size_t k = 0; k < 9; ++k) CHECK(m2(1, k % 3, k) == m(1, k % 3, k));
}

TEST_CASE("doubly stochastic matrices accept both layouts") {
  const Eigen::MatrixXd a = io::real_matrix_from_json(Json::parse("[[0.7, 0.3], [0.3, 0.7]]"));
  const Eigen::MatrixXd b =
      io::real_matrix_from_json(Json::parse(R"({"n": 2, "data": [[0.7, 0.3], [0.3, 0.7]]})"));
  CHECK(a == b);
  CHECK(a(0, 1) == 0.3);
  const Eigen::MatrixXd r = random_doubly_stochastic(4, 2).entries();
  CHECK(io::real_matrix_from_json(io::parse(io::dump(io::real_matrix_to_json(r)))) == r);
}

TEST_CASE("bvn and pseudo-mother formats") {
  Eigen::MatrixXd m(2, 2);
  m << 0.7, 0.3, 0.3, 0.7;
  const Json j = io::bvn_to_json(bvn_decompose(DoublyStochasticMatrix(m)));
  REQUIRE(j["terms"].size() == 2);
  CHECK(j["terms"][0]["perm"] == Json::array({1, 2}));
  CHECK(j["terms"][1]["perm"] == Json::array({2, 1}));

  const auto r = rows(build_trine_dnt());
  const Json pm = io::pseudo_mother_to_json(pseudo_mother(r));
  CHECK(pm["order"] == Json::array({1, 2, 3}));
  CHECK(pm["elements"].size() == 27);
  CHECK(pm["elements"].contains("1-1-1"));
  CHECK(pm["elements"].contains("3-3-3"));
  CHECK_FALSE(pm["elements"].contains("0-0-0"));
}

TEST_CASE("format errors name the offending path") {
  std::string msg;
  CHECK(code_of([] { io::parse("{not json"); }, &msg) == ErrorCode::FormatError);

  const Json missing = {{"rows", 2}, {"cols", 2}};
  CHECK(code_of([&] { io::matrix_from_json(missing); }, &msg) == ErrorCode::FormatError);
  CHECK(msg.find("data") != std::string::npos);

  Json grid = io::dnt_to_json(build_trine_dnt());
  grid["grid"][1][2]["data"][3] = "x";
  CHECK(code_of([&] { io::dnt_from_json(grid); }, &msg) == ErrorCode::FormatError);
  CHECK(msg.find("$.grid[1][2].data[3]") != std::string::npos);

  Json short_row = io::dnt_to_json(build_trine_dnt());
  short_row["grid"][2].erase(0);
  CHECK(code_of([&] { io::dnt_from_json(short_row); }, &msg) == ErrorCode::FormatError);
  CHECK(msg.find("$.grid[2]") != std::string::npos);

  Json wrong_dim = io::povm_to_json(random_povm(2, 2, 0));
  wrong_dim["dim"] = 3;
  CHECK(code_of([&] { io::povm_from_json(wrong_dim); }) == ErrorCode::FormatError);

  Json neg = {{"n", -1}, {"dim", 2}, {"grid", Json::array()}};
  CHECK(code_of([&] { io::grid_from_json(neg); }) == ErrorCode::FormatError);

  Json coeffs = io::decomposition_to_json({3, random_povm(6, 2, 1)});
  coeffs["coefficients"].erase(5);
  CHECK(code_of([&] { io::decomposition_from_json(coeffs); }) == ErrorCode::FormatError);
}

TEST_CASE("library errors from parsed values carry the path") {
  // A valid grid shape that is not a DNT keeps its semantic error code.
  Grid g = build_trine_dnt().grid();
  g[0][0] = HermitianMatrix::zero(2);
  std::string msg;
  const ErrorCode c = code_of([&] { io::dnt_from_json(io::grid_to_json(g), "dnt.json"); }, &msg);
  CHECK(c == ErrorCode::RowNotNormalized);
  CHECK(msg.find("dnt.json: ") != std::string::npos);

  Json nonherm = io::matrix_to_json(oracle::sx());
  nonherm["data"][1] = {0.0, 1.0};
  CHECK(code_of([&] { io::hermitian_from_json(nonherm); }) == ErrorCode::NonHermitianInput);
}

TEST_CASE("dump layout keeps scalar arrays on one line") {
  const std::string s = io::dump(io::matrix_to_json(CMatrix::Identity(1, 1)));
  CHECK(std::regex_search(s, std::regex(R"("data": \[\[1, 0\]\])")));
  CHECK(s.back() == '\n');
}
