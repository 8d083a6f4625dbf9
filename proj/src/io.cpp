#include "dntkit/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace dntkit::io {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw Error(ErrorCode::FormatError, path + ": " + msg);
}

std::string number(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

bool is_scalar(const Json& j) { return !j.is_array() && !j.is_object(); }

void write(const Json& j, std::ostringstream& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
  if (j.is_number_float()) {
    out << number(j.get<double>());
  } else if (is_scalar(j)) {
    out << j.dump();
  } else if (j.is_array()) {
    if (j.empty()) {
      out << "[]";
      return;
    }
    bool flat = true;
    for (const auto& e : j)
      flat = flat && (is_scalar(e) || (e.is_array() && std::all_of(e.begin(), e.end(), is_scalar)));
    if (flat) {
      out << '[';
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out << ", ";
        write(j[i], out, indent);
      }
      out << ']';
      return;
    }
    out << "[\n";
    for (std::size_t i = 0; i < j.size(); ++i) {
      out << inner;
      write(j[i], out, indent + 1);
      out << (i + 1 < j.size() ? ",\n" : "\n");
    }
    out << pad << ']';
  } else {
    if (j.empty()) {
      out << "{}";
      return;
    }
    out << "{\n";
    std::size_t i = 0;
    for (auto it = j.begin(); it != j.end(); ++it, ++i) {
      out << inner << Json(it.key()).dump() << ": ";
      write(it.value(), out, indent + 1);
      out << (i + 1 < j.size() ? ",\n" : "\n");
    }
    out << pad << '}';
  }
}

const Json& field(const Json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(path, "missing field \"" + key + "\"");
  return *it;
}

std::size_t size_field(const Json& j, const std::string& key, const std::string& path) {
  const Json& v = field(j, key, path);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
    fail(path + "." + key, "expected a non-negative integer");
  }
  return v.get<std::size_t>();
}

double real(const Json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  return j.get<double>();
}

const Json& array(const Json& j, const std::string& path, std::optional<std::size_t> len = {}) {
  if (!j.is_array()) fail(path, "expected an array");
  if (len && j.size() != *len) {
    fail(path, "expected " + std::to_string(*len) + " entries, found " + std::to_string(j.size()));
  }
  return j;
}

std::string at(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

// Library errors raised while building a value from a file get the path.
template <class F>
auto located(const std::string& path, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::FormatError) throw;
    std::string msg = e.what();
    msg = msg.substr(msg.find(": ") + 2);
    throw Error(e.code(), path + ": " + msg, e.index(), e.index2(), e.magnitude());
  }
}

}  // namespace

std::string dump(const Json& j) {
  std::ostringstream out;
  write(j, out, 0);
  out << '\n';
  return out.str();
}

Json parse(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::FormatError, source + ": invalid JSON (" + e.what() + ")");
  }
}

Json matrix_to_json(const CMatrix& m) {
  Json data = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) data.push_back({m(r, c).real(), m(r, c).imag()});
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

CMatrix matrix_from_json(const Json& j, const std::string& path) {
  const std::size_t rows = size_field(j, "rows", path);
  const std::size_t cols = size_field(j, "cols", path);
  if (rows == 0 || cols == 0) fail(path, "matrix dimensions must be positive");
  const std::string dpath = path + ".data";
  const Json& data = array(field(j, "data", path), dpath, rows * cols);
  CMatrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t k = 0; k < data.size(); ++k) {
    const Json& e = data[k];
    Complex v;
    if (e.is_number()) {
      v = Complex(e.get<double>(), 0.0);
    } else {
      array(e, at(dpath, k), 2);
      v = Complex(real(e[0], at(at(dpath, k), 0)), real(e[1], at(at(dpath, k), 1)));
    }
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      fail(at(dpath, k), "entry is not finite");
    m(static_cast<Eigen::Index>(k / cols), static_cast<Eigen::Index>(k % cols)) = v;
  }
  return m;
}

HermitianMatrix hermitian_from_json(const Json& j, const std::string& path) {
  CMatrix m = matrix_from_json(j, path);
  return located(path, [&] { return HermitianMatrix(std::move(m)); });
}

Json real_matrix_to_json(const Eigen::MatrixXd& m) {
  Json data = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    data.push_back(std::move(row));
  }
  return {{"n", m.rows()}, {"data", std::move(data)}};
}

Eigen::MatrixXd real_matrix_from_json(const Json& j, const std::string& path) {
  const bool bare = j.is_array();
  const std::string dpath = bare ? path : path + ".data";
  const Json& data = bare ? j : array(field(j, "data", path), dpath);
  const std::size_t n = bare ? data.size() : size_field(j, "n", path);
  array(data, dpath, n);
  if (n == 0) fail(dpath, "matrix is empty");
  Eigen::MatrixXd m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t r = 0; r < n; ++r) {
    const Json& row = array(data[r], at(dpath, r), n);
    for (std::size_t c = 0; c < n; ++c) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          real(row[c], at(at(dpath, r), c));
    }
  }
  return m;
}

Json bvn_to_json(const BvnDecomposition& b) {
  Json terms = Json::array();
  for (const auto& t : b.terms)
    terms.push_back({{"weight", t.weight}, {"perm", t.perm.one_based()}});
  return {{"terms", std::move(terms)}};
}

Json povm_to_json(const Povm& p) {
  Json el = Json::array();
  for (const auto& e : p.elements()) el.push_back(matrix_to_json(e.mat()));
  return {{"dim", p.dim()}, {"elements", std::move(el)}};
}

Povm povm_from_json(const Json& j, const std::string& path) {
  const std::size_t dim = size_field(j, "dim", path);
  const std::string epath = path + ".elements";
  const Json& el = array(field(j, "elements", path), epath);
  if (el.empty()) fail(epath, "a POVM needs at least one element");
  std::vector<HermitianMatrix> ops;
  for (std::size_t i = 0; i < el.size(); ++i) {
    ops.push_back(hermitian_from_json(el[i], at(epath, i)));
    if (static_cast<std::size_t>(ops.back().dim()) != dim) {
      fail(at(epath, i), "element dimension differs from \"dim\"");
    }
  }
  return located(path, [&] { return Povm(std::move(ops)); });
}

Json map_to_json(const PostProcessingMap& m) {
  Json probs = Json::array();
  for (std::size_t i = 0; i < m.num_measurements(); ++i) {
    Json per_i = Json::array();
    for (std::size_t j = 0; j < m.num_outcomes(); ++j) {
      Json per_j = Json::array();
      for (std::size_t k = 0; k < m.num_mother_outcomes(); ++k) per_j.push_back(m(i, j, k));
      per_i.push_back(std::move(per_j));
    }
    probs.push_back(std::move(per_i));
  }
  return {{"m", m.num_measurements()},
          {"n", m.num_outcomes()},
          {"K", m.num_mother_outcomes()},
          {"probs", std::move(probs)}};
}

PostProcessingMap map_from_json(const Json& j, const std::string& path) {
  const std::size_t m = size_field(j, "m", path);
  const std::size_t n = size_field(j, "n", path);
  const std::size_t kk = size_field(j, "K", path);
  const std::string ppath = path + ".probs";
  const Json& probs = array(field(j, "probs", path), ppath, m);
  std::vector<double> p;
  p.reserve(m * n * kk);
  for (std::size_t i = 0; i < m; ++i) {
    const Json& pi = array(probs[i], at(ppath, i), n);
    for (std::size_t o = 0; o < n; ++o) {
      const Json& pj = array(pi[o], at(at(ppath, i), o), kk);
      for (std::size_t k = 0; k < kk; ++k) p.push_back(real(pj[k], at(at(at(ppath, i), o), k)));
    }
  }
  return located(path, [&] { return PostProcessingMap(m, n, kk, std::move(p)); });
}

Json mother_to_json(const MotherMeasurement& m) {
  return {{"mother", povm_to_json(m.mother)}, {"map", map_to_json(m.map)}};
}

Json instance_to_json(const JmInstance& inst) {
  Json ps = Json::array();
  for (const auto& p : inst.povms()) ps.push_back(povm_to_json(p));
  return {{"povms", std::move(ps)}};
}

JmInstance instance_from_json(const Json& j, const std::string& path) {
  const std::string ppath = path + ".povms";
  const Json& ps = array(field(j, "povms", path), ppath);
  if (ps.empty()) fail(ppath, "instance has no POVMs");
  std::vector<Povm> povms;
  for (std::size_t i = 0; i < ps.size(); ++i) povms.push_back(povm_from_json(ps[i], at(ppath, i)));
  return located(path, [&] { return JmInstance(std::move(povms)); });
}

Json verdict_to_json(const JmVerdict& v) {
  return {{"compatible", v.compatible},
          {"eta", v.robustness},
          {"mother", v.mother ? mother_to_json(*v.mother) : Json(nullptr)}};
}

Json grid_to_json(const Grid& g) {
  Json grid = Json::array();
  for (const auto& row : g) {
    Json r = Json::array();
    for (const auto& a : row) r.push_back(matrix_to_json(a.mat()));
    grid.push_back(std::move(r));
  }
  return {{"n", g.size()}, {"dim", g.front().front().dim()}, {"grid", std::move(grid)}};
}

Json dnt_to_json(const Dnt& d) { return grid_to_json(d.grid()); }

Grid grid_from_json(const Json& j, const std::string& path) {
  const std::size_t n = size_field(j, "n", path);
  const std::size_t dim = size_field(j, "dim", path);
  if (n == 0) fail(path + ".n", "must be positive");
  const std::string gpath = path + ".grid";
  const Json& rows_json = array(field(j, "grid", path), gpath, n);
  Grid g;
  for (std::size_t i = 0; i < n; ++i) {
    const Json& r = array(rows_json[i], at(gpath, i), n);
    std::vector<HermitianMatrix> row;
    for (std::size_t c = 0; c < n; ++c) {
      row.push_back(hermitian_from_json(r[c], at(at(gpath, i), c)));
      if (static_cast<std::size_t>(row.back().dim()) != dim) {
        fail(at(at(gpath, i), c), "entry dimension differs from \"dim\"");
      }
    }
    g.push_back(std::move(row));
  }
  return g;
}

Dnt dnt_from_json(const Json& j, const std::string& path) {
  Grid g = grid_from_json(j, path);
  return located(path, [&] { return Dnt(std::move(g)); });
}

Json decomposition_to_json(const PermutationDecomposition& d) {
  Json c = Json::array();
  for (const auto& q : d.coefficients.elements()) c.push_back(matrix_to_json(q.mat()));
  return {{"n", d.n}, {"coefficients", std::move(c)}};
}

PermutationDecomposition decomposition_from_json(const Json& j, const std::string& path) {
  const std::size_t n = size_field(j, "n", path);
  if (n == 0 || n > static_cast<std::size_t>(kMaxPermutationN))
    fail(path + ".n", "must be in 1..6");
  const std::string cpath = path + ".coefficients";
  const Json& c = array(field(j, "coefficients", path), cpath, factorial(static_cast<int>(n)));
  std::vector<HermitianMatrix> q;
  for (std::size_t l = 0; l < c.size(); ++l) q.push_back(hermitian_from_json(c[l], at(cpath, l)));
  return located(path,
                 [&] { return PermutationDecomposition{static_cast<int>(n), Povm(std::move(q))}; });
}

Json affine_to_json(const AffineDecomposition& a) {
  Json c = Json::array();
  for (const auto& q : a.coefficients) c.push_back(matrix_to_json(q.mat()));
  Json flags = Json::array();
  for (bool b : a.psd_flags) flags.push_back(b);
  return {{"n", a.n},
          {"coefficients", std::move(c)},
          {"residual", a.residual},
          {"psd_flags", std::move(flags)}};
}

Json pseudo_mother_to_json(const PseudoMother& pm) {
  Json order = Json::array();
  for (std::size_t o : pm.order) order.push_back(o + 1);
  Json elements = Json::object();
  Json herm = Json::object();
  Json psd = Json::object();
  for (std::size_t k = 0; k < pm.elements.size(); ++k) {
    std::string key;
    for (std::size_t b : outcome_tuple(k, pm.num_outcomes, pm.num_measurements)) {
      key += (key.empty() ? "" : "-") + std::to_string(b + 1);
    }
    elements[key] = matrix_to_json(pm.elements[k]);
    herm[key] = static_cast<bool>(pm.hermitian[k]);
    psd[key] = static_cast<bool>(pm.psd[k]);
  }
  return {{"order", std::move(order)},
          {"elements", std::move(elements)},
          {"hermitian", std::move(herm)},
          {"psd", std::move(psd)},
          {"normalization_defect", pm.normalization_defect}};
}

Json sdp_problem_to_json(const SdpProblem& p) {
  auto terms = [](const std::vector<SdpTerm>& ts) {
    Json out = Json::array();
    for (const auto& t : ts)
      out.push_back({{"block", t.block}, {"coeff", matrix_to_json(t.coeff.mat())}});
    return out;
  };
  Json cons = Json::array();
  for (const auto& c : p.constraints) cons.push_back({{"terms", terms(c.terms)}, {"rhs", c.rhs}});
  return {{"block_dims", p.block_dims},
          {"sense", p.sense == Sense::Minimize ? "minimize" : "maximize"},
          {"objective", terms(p.objective)},
          {"constraints", std::move(cons)}};
}

Json sdp_solution_to_json(const SdpSolution& s) {
  Json blocks = Json::array();
  for (const auto& b : s.primal_blocks) blocks.push_back(matrix_to_json(b.mat()));
  return {{"status", to_string(s.status)},
          {"primal_blocks", std::move(blocks)},
          {"dual_vector", s.dual_vector},
          {"primal_objective", s.primal_objective},
          {"dual_objective", s.dual_objective},
          {"residuals",
           {{"primal_eq", s.residuals.primal_eq},
            {"dual_eq", s.residuals.dual_eq},
            {"gap", s.residuals.gap}}},
          {"iterations", s.iterations},
          {"dropped_constraints", s.dropped_constraints}};
}

}  // namespace dntkit::io
