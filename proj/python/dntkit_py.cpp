#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "dntkit/cli.hpp"
#include "dntkit/dnt.hpp"

namespace py = pybind11;
using namespace dntkit;

namespace {

using PyGrid = std::vector<std::vector<CMatrix>>;

std::vector<HermitianMatrix> herm(const std::vector<CMatrix>& ms) {
  std::vector<HermitianMatrix> out;
  for (const auto& m : ms) out.emplace_back(m);
  return out;
}

std::vector<CMatrix> mats(const std::vector<HermitianMatrix>& hs) {
  std::vector<CMatrix> out;
  for (const auto& h : hs) out.push_back(h.mat());
  return out;
}

std::vector<CMatrix> mats(const Povm& p) { return mats(p.elements()); }

Povm to_povm(const std::vector<CMatrix>& ms) { return Povm(herm(ms)); }

std::vector<Povm> to_povms(const std::vector<std::vector<CMatrix>>& ps) {
  std::vector<Povm> out;
  for (const auto& p : ps) out.push_back(to_povm(p));
  return out;
}

std::vector<std::vector<CMatrix>> from_povms(const std::vector<Povm>& ps) {
  std::vector<std::vector<CMatrix>> out;
  for (const auto& p : ps) out.push_back(mats(p));
  return out;
}

Grid to_grid(const PyGrid& g) {
  Grid out;
  for (const auto& r : g) out.push_back(herm(r));
  return out;
}

PyGrid from_grid(const Grid& g) {
  PyGrid out;
  for (const auto& r : g) out.push_back(mats(r));
  return out;
}

Dnt to_dnt(const PyGrid& g) { return Dnt(to_grid(g)); }

SdpOptions options(bool predictor_corrector) {
  SdpOptions o;
  o.predictor_corrector = predictor_corrector;
  return o;
}

}  // namespace

PYBIND11_MODULE(_dntkit, m) {
  m.doc() = "Doubly normalised tensors, joint measurability and permutation decompositions";

  static py::exception<Error> error(m, "Error", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = py::reinterpret_borrow<py::object>(error.ptr())(e.what());
      exc.attr("code") = to_string(e.code());
      PyErr_SetObject(error.ptr(), exc.ptr());
    }
  });

  m.def(
      "validate_dnt", [](const PyGrid& g) { return from_grid(dnt_validate(to_grid(g)).grid()); },
      py::arg("grid"), "Returns the grid if it is a DNT, raises Error otherwise.");
  m.def("trine_dnt", [] { return from_grid(build_trine_dnt().grid()); });
  m.def("trine_povm", [] { return mats(trine_povm()); });
  m.def("rows", [](const PyGrid& g) { return from_povms(rows(to_dnt(g))); }, py::arg("grid"));
  m.def("columns", [](const PyGrid& g) { return from_povms(columns(to_dnt(g))); }, py::arg("grid"));
  m.def(
      "synthesize",
      [](const std::vector<CMatrix>& q) { return from_grid(synthesize(to_povm(q)).grid()); },
      py::arg("coefficients"),
      "DNT of a coefficient POVM with n! outcomes in lexicographic permutation order.");

  m.def(
      "decide_permutation_decomposable",
      [](const PyGrid& g, double tol, bool pc) {
        const DecompositionVerdict v = decide_permutation_decomposable(to_dnt(g), tol, options(pc));
        py::dict out;
        out["decomposable"] = v.decomposable;
        out["eta"] = v.eta;
        out["coefficients"] =
            v.decomposition ? py::cast(mats(v.decomposition->coefficients)) : py::none();
        out["status"] = to_string(v.solver_status);
        return out;
      },
      py::arg("grid"), py::arg("tol") = 1e-6, py::arg("predictor_corrector") = false);

  m.def(
      "jm_check",
      [](const std::vector<std::vector<CMatrix>>& povms, double tol, bool pc) {
        const JmVerdict v = jm_check(JmInstance(to_povms(povms)), tol, options(pc));
        py::dict out;
        out["compatible"] = v.compatible;
        out["eta"] = v.robustness;
        out["mother"] = v.mother ? py::cast(mats(v.mother->mother)) : py::none();
        out["status"] = to_string(v.solver_status);
        return out;
      },
      py::arg("povms"), py::arg("tol") = 1e-6, py::arg("predictor_corrector") = false,
      "Mother elements are indexed by joint outcomes, first measurement most significant.");

  m.def(
      "affine_decompose",
      [](const PyGrid& g) {
        const AffineDecomposition a = affine_decompose(to_dnt(g));
        py::dict out;
        out["coefficients"] = mats(a.coefficients);
        out["residual"] = a.residual;
        out["psd_flags"] = a.psd_flags;
        out["success"] = a.success;
        return out;
      },
      py::arg("grid"));

  m.def(
      "bvn_decompose",
      [](const Eigen::MatrixXd& d) {
        std::vector<std::pair<double, std::vector<int>>> out;
        for (const auto& t : bvn_decompose(DoublyStochasticMatrix(d)).terms) {
          out.emplace_back(t.weight, t.perm.one_based());
        }
        return out;
      },
      py::arg("matrix"), "(weight, 1-based images) pairs.");

  m.def(
      "pseudo_mother",
      [](const std::vector<std::vector<CMatrix>>& povms, const std::vector<std::size_t>& order) {
        const std::vector<Povm> ps = to_povms(povms);
        const PseudoMother pm = pseudo_mother(ps, order);
        py::dict out;
        out["elements"] = pm.elements;
        out["psd"] = pm.psd;
        out["normalization_defect"] = pm.normalization_defect;
        out["reproduction_error"] = pseudo_mother_reproduction_error(pm, ps);
        return out;
      },
      py::arg("povms"), py::arg("order") = std::vector<std::size_t>{},
      "Product order uses 0-based measurement indices.");

  m.def(
      "povm_is_extremal",
      [](const std::vector<CMatrix>& p) { return povm_is_extremal(to_povm(p)).extremal; },
      py::arg("povm"));
  m.def(
      "dnt_is_extremal", [](const PyGrid& g) { return dnt_is_extremal(to_dnt(g)).extremal; },
      py::arg("grid"));

  m.def(
      "mother_of_trivial_pair",
      [](const PyGrid& g) { return mats(mother_of_trivial_pair(to_dnt(g)).mother); },
      py::arg("grid"));
  m.def(
      "dnt_from_trivial_mother",
      [](const std::vector<CMatrix>& mother) {
        return from_grid(dnt_from_trivial_mother(to_povm(mother)).grid());
      },
      py::arg("mother"));

  m.def(
      "random_povm",
      [](std::size_t n, Eigen::Index d, std::uint64_t seed) {
        return mats(random_povm(n, d, seed));
      },
      py::arg("n"), py::arg("d"), py::arg("seed"));
  m.def(
      "random_dnt",
      [](std::size_t n, Eigen::Index d, std::uint64_t seed, const std::string& method) {
        if (method != "coefficient" && method != "sinkhorn") {
          throw Error(ErrorCode::InvalidArgument, "method must be coefficient or sinkhorn");
        }
        return from_grid(random_dnt(n, d, seed,
                                    method == "sinkhorn" ? RandomDntMethod::Sinkhorn
                                                         : RandomDntMethod::Coefficient)
                             .grid());
      },
      py::arg("n"), py::arg("d"), py::arg("seed"), py::arg("method") = "coefficient");

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args, const std::string& input) {
        std::istringstream in(input);
        std::ostringstream out, err;
        const int code = cli::run(args, in, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), py::arg("stdin") = "", "Returns (exit code, stdout, stderr).");
}
