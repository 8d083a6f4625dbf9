#include "dntkit/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "dntkit/dnt.hpp"
#include "dntkit/io.hpp"

namespace dntkit::cli {

namespace {

using io::Json;

constexpr const char* kFormats =
    R"(File formats (JSON; numbers are written with 17 significant digits):
  matrix     {"rows": 2, "cols": 2, "data": [[0.5, 0], [0, -0.5], [0, 0.5], [0.5, 0]]}
             row-major [re, im] pairs
  povm       {"dim": 2, "elements": [matrix, matrix, ...]}
  instance   {"povms": [povm, povm, ...]}
  dnt        {"n": 2, "dim": 2, "grid": [[matrix, matrix], [matrix, matrix]]}
  coeffs     {"n": 3, "coefficients": [matrix x n!]}
             permutations in lexicographic order of their 1-based images
  ds matrix  {"n": 2, "data": [[0.7, 0.3], [0.3, 0.7]]} or the bare nested array
  bvn        {"terms": [{"weight": 0.7, "perm": [1, 2]}, {"weight": 0.3, "perm": [2, 1]}]}
             perm[j] is the row hit by column j
  map        {"m": 2, "n": 2, "K": 4, "probs": [[[1, 1, 0, 0], [0, 0, 1, 1]], ...]}
             probs[i][j][k] = mu(j | measurement i, mother outcome k)
  mother     {"mother": povm, "map": map}
  verdict    {"compatible": false, "eta": 0.866, "mother": null}
  pseudo     {"order": [1, 2, 3], "elements": {"1-1-1": matrix, ...}, ...}

Inputs are read from the named file, or from standard input when the path is
omitted or "-". Exit status: 0 success or affirmative verdict, 2 negative
verdict (invalid, incompatible, not decomposable, not extremal), 1 error.)";

std::string slurp(const std::string& path, std::istream& in) {
  std::ostringstream buf;
  if (path.empty() || path == "-") {
    buf << in.rdbuf();
  } else {
    std::ifstream f(path);
    if (!f) throw Error(ErrorCode::InvalidArgument, "cannot open " + path);
    buf << f.rdbuf();
  }
  return buf.str();
}

std::string source_name(const std::string& path) {
  return path.empty() || path == "-" ? "<stdin>" : path;
}

Json load(const std::string& path, std::istream& in) {
  return io::parse(slurp(path, in), source_name(path));
}

// Loads and decodes one input; format errors are prefixed with the source.
template <class F>
auto decode(const std::string& path, std::istream& in, F&& f) {
  const Json j = load(path, in);
  try {
    return f(j);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::FormatError) throw;
    std::string msg = e.what();
    msg = msg.substr(msg.find(": ") + 2);
    throw Error(ErrorCode::FormatError, source_name(path) + ": " + msg);
  }
}

std::vector<Povm> rows_and_columns(const Dnt& d) {
  std::vector<Povm> all = rows(d);
  for (auto& c : columns(d)) all.push_back(std::move(c));
  return all;
}

std::vector<std::size_t> parse_order(const std::string& text) {
  std::vector<std::size_t> order;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size() || v < 1) {
      throw Error(ErrorCode::InvalidArgument, "--order expects 1-based indices like 1,2,3");
    }
    order.push_back(static_cast<std::size_t>(v - 1));
  }
  return order;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Doubly normalised tensors, joint measurability and permutation decompositions",
               "dntkit"};
  app.footer(kFormats);
  app.require_subcommand(1);

  std::string input;
  double tol = 1e-6;
  auto add_input = [&](CLI::App* sub, const char* what) {
    sub->add_option("input", input, std::string(what) + " file (default: standard input)");
  };

  auto* validate = app.add_subcommand("validate", "Check that a grid is a DNT");
  add_input(validate, "dnt");

  std::string coeff_path;
  auto* synth = app.add_subcommand("synth", "Build the DNT of a coefficient POVM with n! outcomes");
  synth->add_option("--coeff,input", coeff_path, "povm file (default: standard input)");

  std::string mode = "permutation";
  auto* decompose = app.add_subcommand("decompose", "Decompose a DNT into permutation tensors");
  add_input(decompose, "dnt");
  decompose->add_option("--mode", mode, "permutation (PSD coefficients) or affine")
      ->check(CLI::IsMember({"permutation", "affine"}));
  decompose->add_option("--tol", tol, "robustness tolerance for the permutation mode")
      ->capture_default_str();

  auto* jm = app.add_subcommand("jm", "Joint measurability of a POVM instance");
  add_input(jm, "instance");
  jm->add_option("--tol", tol, "robustness tolerance")->capture_default_str();
  auto* jm_rows = app.add_subcommand("jm-rows", "Joint measurability of the rows of a DNT");
  add_input(jm_rows, "dnt");
  jm_rows->add_option("--tol", tol, "robustness tolerance")->capture_default_str();
  auto* jm_all =
      app.add_subcommand("jm-all", "Joint measurability of the rows and columns of a DNT");
  add_input(jm_all, "dnt");
  jm_all->add_option("--tol", tol, "robustness tolerance")->capture_default_str();

  auto* bvn = app.add_subcommand("bvn", "Birkhoff decomposition of a doubly stochastic matrix");
  add_input(bvn, "ds matrix");

  std::string order_text;
  auto* pseudo = app.add_subcommand("pseudo-mother", "Product pseudo-mother of the rows of a DNT");
  add_input(pseudo, "dnt");
  pseudo->add_option("--order", order_text, "product order of the rows, e.g. 3,1,2");

  auto* trine = app.add_subcommand("trine", "Emit the trine DNT");

  auto* trivial = app.add_subcommand("trivial-mother", "Mother of the trivial pair from a DNT");
  add_input(trivial, "dnt");
  auto* from_trivial =
      app.add_subcommand("from-trivial-mother", "DNT from a mother of the trivial pair");
  add_input(from_trivial, "grid, povm or mother");

  std::string povm_path, dnt_path;
  auto* extremal = app.add_subcommand("extremal", "Extremality of a POVM or a DNT");
  auto* opt_povm = extremal->add_option("--povm", povm_path, "povm file (- for standard input)");
  auto* opt_dnt = extremal->add_option("--dnt", dnt_path, "dnt file (- for standard input)");
  opt_povm->excludes(opt_dnt);
  extremal->require_option(1);

  std::string kind, method = "coefficient";
  std::size_t rn = 0;
  Eigen::Index rd = 0;
  std::uint64_t seed = 0;
  auto* random = app.add_subcommand("random", "Seeded random POVM or DNT");
  random->add_option("--kind", kind, "povm or dnt")
      ->required()
      ->check(CLI::IsMember({"povm", "dnt"}));
  random->add_option("--n", rn, "outcomes (povm) or grid size (dnt)")->required();
  random->add_option("--d", rd, "Hilbert space dimension")->required();
  random->add_option("--seed", seed, "seed")->required();
  random->add_option("--method", method, "dnt generator: coefficient or sinkhorn")
      ->check(CLI::IsMember({"coefficient", "sinkhorn"}))
      ->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitError;
  }

  auto emit = [&](const Json& j) { out << io::dump(j); };
  auto load_dnt = [&] {
    return decode(input, in, [](const Json& j) { return io::dnt_from_json(j); });
  };
  try {
    if (*validate) {
      const Grid g = decode(input, in, [](const Json& j) { return io::grid_from_json(j); });
      const DntDefects defects = dnt_defects(g);
      Json report = {{"n", g.size()},
                     {"dim", g.front().front().dim()},
                     {"min_eigenvalue", defects.min_eigenvalue},
                     {"row_defect", defects.row_defect},
                     {"column_defect", defects.column_defect}};
      try {
        Dnt d(g);
        report["valid"] = true;
        emit(report);
        return kExitOk;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::EntryNotPsd && e.code() != ErrorCode::RowNotNormalized &&
            e.code() != ErrorCode::ColumnNotNormalized) {
          throw;
        }
        report["valid"] = false;
        report["error"] = to_string(e.code());
        report["message"] = e.what();
        emit(report);
        return kExitNegative;
      }
    }
    if (*synth) {
      emit(io::dnt_to_json(
          synthesize(decode(coeff_path, in, [](const Json& j) { return io::povm_from_json(j); }))));
      return kExitOk;
    }
    if (*decompose) {
      const Dnt d = load_dnt();
      if (mode == "affine") {
        const AffineDecomposition a = affine_decompose(d);
        Json j = io::affine_to_json(a);
        j["success"] = a.success;
        emit(j);
        return a.success ? kExitOk : kExitNegative;
      }
      const DecompositionVerdict v = decide_permutation_decomposable(d, tol);
      emit({{"decomposable", v.decomposable},
            {"eta", v.eta},
            {"decomposition",
             v.decomposition ? io::decomposition_to_json(*v.decomposition) : Json(nullptr)}});
      return v.decomposable ? kExitOk : kExitNegative;
    }
    if (*jm || *jm_rows || *jm_all) {
      const JmInstance inst = decode(input, in, [&](const Json& j) {
        return *jm ? io::instance_from_json(j)
                   : JmInstance(*jm_rows ? rows(io::dnt_from_json(j))
                                         : rows_and_columns(io::dnt_from_json(j)));
      });
      const JmVerdict v = jm_check(inst, tol);
      emit(io::verdict_to_json(v));
      return v.compatible ? kExitOk : kExitNegative;
    }
    if (*bvn) {
      const auto m = DoublyStochasticMatrix(
          decode(input, in, [](const Json& j) { return io::real_matrix_from_json(j); }));
      emit(io::bvn_to_json(bvn_decompose(m)));
      return kExitOk;
    }
    if (*pseudo) {
      const auto r = rows(load_dnt());
      emit(io::pseudo_mother_to_json(pseudo_mother(r, parse_order(order_text))));
      return kExitOk;
    }
    if (*trine) {
      emit(io::dnt_to_json(build_trine_dnt()));
      return kExitOk;
    }
    if (*trivial) {
      emit(io::mother_to_json(mother_of_trivial_pair(load_dnt())));
      return kExitOk;
    }
    if (*from_trivial) {
      const Dnt d = decode(input, in, [](const Json& j) {
        if (j.contains("grid")) return dnt_from_trivial_mother(io::grid_from_json(j));
        if (j.contains("mother")) {
          return dnt_from_trivial_mother(io::povm_from_json(j["mother"], "$.mother"));
        }
        return dnt_from_trivial_mother(io::povm_from_json(j));
      });
      emit(io::dnt_to_json(d));
      return kExitOk;
    }
    if (*extremal) {
      if (*opt_povm) {
        const Povm p = decode(povm_path, in, [](const Json& j) { return io::povm_from_json(j); });
        const ExtremalityReport r = povm_is_extremal(p);
        emit({{"extremal", r.extremal},
              {"kernel_dimension", r.kernel_dimension},
              {"non_null_elements", count_non_null(p)}});
        return r.extremal ? kExitOk : kExitNegative;
      }
      const DntExtremalityReport r =
          dnt_is_extremal(decode(dnt_path, in, [](const Json& j) { return io::dnt_from_json(j); }));
      emit({{"extremal", r.extremal},
            {"kernel_dimension", r.kernel_dimension},
            {"rows_columns_extremal", r.rows_columns_extremal}});
      return r.extremal ? kExitOk : kExitNegative;
    }
    if (*random) {
      if (kind == "povm") {
        emit(io::povm_to_json(random_povm(rn, rd, seed)));
      } else {
        emit(io::dnt_to_json(random_dnt(
            rn, rd, seed,
            method == "sinkhorn" ? RandomDntMethod::Sinkhorn : RandomDntMethod::Coefficient)));
      }
      return kExitOk;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}

}  // namespace dntkit::cli
