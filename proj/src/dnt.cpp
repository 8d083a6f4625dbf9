#include "dntkit/dnt.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

namespace dntkit {

namespace {

void check_square(const Grid& g) {
  if (g.empty()) throw Error(ErrorCode::InvalidArgument, "grid is empty");
  const std::size_t n = g.size();
  const Eigen::Index d = g.front().empty() ? 0 : g.front().front().dim();
  for (std::size_t i = 0; i < n; ++i) {
    if (g[i].size() != n) throw Error(ErrorCode::DimensionMismatch, "grid is not square", i);
    for (std::size_t j = 0; j < n; ++j) {
      if (g[i][j].dim() != d) {
        throw Error(ErrorCode::DimensionMismatch, "grid entries differ in dimension", i, j);
      }
    }
  }
}

double line_defect(const Grid& g, std::size_t idx, bool row) {
  const Eigen::Index d = g.front().front().dim();
  CMatrix s = -CMatrix::Identity(d, d);
  for (std::size_t t = 0; t < g.size(); ++t) s += row ? g[idx][t].mat() : g[t][idx].mat();
  return max_norm(s);
}

std::string pos(std::size_t i, std::size_t j) {
  return "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
}

}  // namespace

Dnt::Dnt(Grid grid) : grid_(std::move(grid)) {
  check_square(grid_);
  const std::size_t n = grid_.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const PsdCheck c = is_psd(grid_[i][j]);
      if (!c.psd) {
        throw Error(ErrorCode::EntryNotPsd,
                    "entry " + pos(i, j) + " has eigenvalue " + format_magnitude(c.min_eigenvalue),
                    i, j, c.min_eigenvalue);
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    const double defect = line_defect(grid_, i, true);
    if (defect > kPsdTol) {
      throw Error(
          ErrorCode::RowNotNormalized,
          "row " + std::to_string(i + 1) + " misses the identity by " + format_magnitude(defect), i,
          std::nullopt, defect);
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    const double defect = line_defect(grid_, j, false);
    if (defect > kPsdTol) {
      throw Error(
          ErrorCode::ColumnNotNormalized,
          "column " + std::to_string(j + 1) + " misses the identity by " + format_magnitude(defect),
          j, std::nullopt, defect);
    }
  }
}

Dnt dnt_validate(Grid grid) { return Dnt(std::move(grid)); }

DntDefects dnt_defects(const Grid& grid) {
  check_square(grid);
  DntDefects out;
  out.min_eigenvalue = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (const auto& a : grid[i])
      out.min_eigenvalue = std::min(out.min_eigenvalue, is_psd(a).min_eigenvalue);
    out.row_defect = std::max(out.row_defect, line_defect(grid, i, true));
    out.column_defect = std::max(out.column_defect, line_defect(grid, i, false));
  }
  return out;
}

std::vector<Povm> rows(const Dnt& d) {
  std::vector<Povm> out;
  for (const auto& r : d.grid()) out.emplace_back(r);
  return out;
}

std::vector<Povm> columns(const Dnt& d) {
  std::vector<Povm> out;
  for (std::size_t j = 0; j < d.n(); ++j) {
    std::vector<HermitianMatrix> c;
    for (std::size_t i = 0; i < d.n(); ++i) c.push_back(d(i, j));
    out.emplace_back(std::move(c));
  }
  return out;
}

std::optional<int> factorial_root(std::size_t count) {
  for (int n = 1; n <= kMaxPermutationN; ++n) {
    if (factorial(n) == count) return n;
  }
  return std::nullopt;
}

Grid combine_permutation_tensors(int n, std::span<const HermitianMatrix> coeffs) {
  const auto perms = enumerate_permutations(n);
  if (coeffs.size() != perms.size()) {
    throw Error(ErrorCode::BadCardinality, "expected n! coefficients");
  }
  const Eigen::Index d = coeffs.front().dim();
  const auto un = static_cast<std::size_t>(n);
  Grid g(un, std::vector<HermitianMatrix>(un, HermitianMatrix::zero(d)));
  for (std::size_t l = 0; l < perms.size(); ++l) {
    for (int b = 0; b < n; ++b) {
      g[static_cast<std::size_t>(perms[l](b))][static_cast<std::size_t>(b)] += coeffs[l];
    }
  }
  return g;
}

Dnt synthesize(const Povm& coefficients) {
  const auto n = factorial_root(coefficients.size());
  if (!n) {
    throw Error(ErrorCode::BadCardinality, "outcome count " + std::to_string(coefficients.size()) +
                                               " is not n! for any n <= 6");
  }
  return Dnt(combine_permutation_tensors(*n, coefficients.elements()));
}

namespace {

// Q_l blocks followed by eta and its slack when `with_eta`; otherwise the
// plain feasibility problem at eta = 1.
SdpProblem decomposition_problem(const Dnt& dnt, bool with_eta) {
  const int n = static_cast<int>(dnt.n());
  const Eigen::Index d = dnt.dim();
  const auto perms = enumerate_permutations(n);
  const std::size_t nl = perms.size();
  SdpProblem p;
  p.block_dims.assign(nl, d);
  if (with_eta) {
    p.block_dims.push_back(1);
    p.block_dims.push_back(1);
    p.sense = Sense::Maximize;
    p.objective.push_back({nl, HermitianMatrix::identity(1)});
  }
  std::vector<HermitianMatrix> basis;
  for (Eigen::Index e = 0; e < d * d; ++e) basis.emplace_back(hermitian_basis(e, d));
  const HermitianMatrix noise = (1.0 / n) * HermitianMatrix::identity(d);

  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const HermitianMatrix& a = dnt(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
      for (const auto& b : basis) {
        SdpConstraint c;
        for (std::size_t l = 0; l < nl; ++l) {
          if (perms[l](j) == i) c.terms.push_back({l, b});
        }
        if (with_eta) {
          const double coef = -frobenius_inner(b, a - noise);
          c.terms.push_back({nl, HermitianMatrix(CMatrix::Constant(1, 1, Complex(coef, 0.0)))});
          c.rhs = frobenius_inner(b, noise);
        } else {
          c.rhs = frobenius_inner(b, a);
        }
        p.constraints.push_back(std::move(c));
      }
    }
  }
  if (with_eta) {
    SdpConstraint cap;
    cap.terms.push_back({nl, HermitianMatrix::identity(1)});
    cap.terms.push_back({nl + 1, HermitianMatrix::identity(1)});
    cap.rhs = 1.0;
    p.constraints.push_back(std::move(cap));
  }
  return p;
}

// Orthogonal projection onto grids whose rows and columns all sum to I:
// A_ij - R_i/n - C_j/n + T/n^2 with R, C the line defects and T their total.
// Validated tensors carry defects up to the validation tolerance, and the
// decomposition program reads such a defect as a constraint forcing eta = 0.
Grid balance_lines(const Grid& g) {
  const std::size_t n = g.size();
  const Eigen::Index d = g.front().front().dim();
  const double nn = static_cast<double>(n);
  std::vector<CMatrix> row(n, -CMatrix::Identity(d, d)), col(n, -CMatrix::Identity(d, d));
  CMatrix total = -nn * CMatrix::Identity(d, d);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      row[i] += g[i][j].mat();
      col[j] += g[i][j].mat();
      total += g[i][j].mat();
    }
  }
  Grid out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      out[i].push_back(HermitianMatrix::symmetrize(g[i][j].mat() - row[i] / nn - col[j] / nn +
                                                   total / (nn * nn)));
    }
  }
  return out;
}

double grid_distance(const Grid& a, const Grid& b) {
  double e = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a.size(); ++j)
      e = std::max(e, max_norm(a[i][j].mat() - b[i][j].mat()));
  }
  return e;
}

}  // namespace

DecompositionVerdict decide_permutation_decomposable(const Dnt& d, double tol,
                                                     const SdpOptions& opts) {
  const std::size_t n = d.n();
  if (n > kMaxDecomposeN) throw Error(ErrorCode::NTooLarge, "decomposition limited to n <= 4");
  DecompositionVerdict v;
  if (n <= 2) {
    // Identity first, then the swap: the cells force Q = (A_11, A_12).
    std::vector<HermitianMatrix> q(d.grid().front().begin(), d.grid().front().end());
    v.decomposable = true;
    v.eta = 1.0;
    v.decomposition = PermutationDecomposition{static_cast<int>(n), Povm(std::move(q))};
    return v;
  }

  const Dnt balanced(balance_lines(d.grid()));
  const SdpSolution sol = solve(decomposition_problem(balanced, true), opts);
  if (sol.status != SdpStatus::Optimal) {
    throw Error(ErrorCode::SolverFailure,
                std::string("decomposition program ended with status ") + to_string(sol.status));
  }
  const std::size_t nl = factorial(static_cast<int>(n));
  v.eta = sol.primal_blocks[nl](0, 0).real();
  v.decomposable = v.eta >= 1.0 - tol;
  v.solver_status = sol.status;
  v.solver_residuals = sol.residuals;
  if (!v.decomposable) return v;

  const SdpSolution ref = solve(decomposition_problem(balanced, false), opts);
  if (ref.status != SdpStatus::Optimal) {
    throw Error(ErrorCode::SolverFailure,
                std::string("coefficient refinement ended with status ") + to_string(ref.status));
  }
  std::vector<HermitianMatrix> q(ref.primal_blocks.begin(),
                                 ref.primal_blocks.begin() + static_cast<std::ptrdiff_t>(nl));
  Povm coeffs(renormalize(q));
  const double err =
      grid_distance(combine_permutation_tensors(static_cast<int>(n), coeffs.elements()), d.grid());
  if (err > 1e-7) {
    throw Error(ErrorCode::SolverFailure,
                "recovered coefficients reproduce the tensor only within " + format_magnitude(err),
                std::nullopt, std::nullopt, err);
  }
  v.decomposition = PermutationDecomposition{static_cast<int>(n), std::move(coeffs)};
  return v;
}

ConstructiveDecomposition decompose_from_symmetric_mother(const Dnt& d, const Povm& mother,
                                                          const PostProcessingMap& map) {
  const std::size_t n = d.n();
  const std::size_t kk = mother.size();
  if (map.num_measurements() != 2 * n || map.num_outcomes() != n ||
      map.num_mother_outcomes() != kk || mother.dim() != d.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "map must cover 2n measurements of n outcomes");
  }
  double asym = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < kk; ++k)
        asym = std::max(asym, std::abs(map(i, j, k) - map(n + j, i, k)));
    }
  }
  if (asym > 1e-10) {
    throw Error(ErrorCode::AsymmetricMap, "map asymmetry " + format_magnitude(asym), std::nullopt,
                std::nullopt, asym);
  }
  std::vector<Povm> targets = rows(d);
  for (auto& c : columns(d)) targets.push_back(std::move(c));
  const double rep = reproduction_error(MotherMeasurement{mother, map}, targets);
  if (rep > 1e-8) {
    throw Error(ErrorCode::ReproductionFailure,
                "mother reproduces the tensor only within " + format_magnitude(rep), std::nullopt,
                std::nullopt, rep);
  }

  const int in = static_cast<int>(n);
  const std::size_t nl = factorial(in);
  ConstructiveDecomposition out;
  std::vector<CMatrix> q(nl, CMatrix::Zero(d.dim(), d.dim()));
  for (std::size_t k = 0; k < kk; ++k) {
    Eigen::MatrixXd s(in, in);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j)
        s(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = map(i, j, k);
    }
    const double defect = std::max({(s.rowwise().sum().array() - 1.0).abs().maxCoeff(),
                                    (s.colwise().sum().array() - 1.0).abs().maxCoeff(),
                                    std::max(0.0, -s.minCoeff())});
    if (defect > 1e-9) {
      throw Error(ErrorCode::SliceNotDoublyStochastic,
                  "slice " + std::to_string(k + 1) + " is off by " + format_magnitude(defect), k,
                  std::nullopt, defect);
    }
    BvnDecomposition bvn = bvn_decompose(DoublyStochasticMatrix(s));
    for (const auto& t : bvn.terms) q[permutation_index(t.perm)] += t.weight * mother[k].mat();
    out.slices.push_back(std::move(bvn));
  }
  std::vector<HermitianMatrix> qh;
  for (const auto& m : q) qh.push_back(HermitianMatrix::symmetrize(m));
  Povm coeffs(std::move(qh));
  const double err = grid_distance(combine_permutation_tensors(in, coeffs.elements()), d.grid());
  if (err > 1e-8) {
    throw Error(ErrorCode::ReproductionFailure,
                "synthesized coefficients miss the tensor by " + format_magnitude(err),
                std::nullopt, std::nullopt, err);
  }
  out.decomposition = PermutationDecomposition{in, std::move(coeffs)};
  return out;
}

PostProcessingMap symmetrize_from_independent_mother(const Dnt& d, const Povm& mother,
                                                     const PostProcessingMap& row_map) {
  const std::size_t n = d.n();
  const std::size_t kk = mother.size();
  if (row_map.num_measurements() != n || row_map.num_outcomes() != n ||
      row_map.num_mother_outcomes() != kk || mother.dim() != d.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "row map must cover n measurements of n outcomes");
  }
  const double rep = reproduction_error(MotherMeasurement{mother, row_map}, rows(d));
  if (rep > 1e-8) {
    throw Error(ErrorCode::ReproductionFailure,
                "row map reproduces the rows only within " + format_magnitude(rep), std::nullopt,
                std::nullopt, rep);
  }
  if (!linear_independence(mother.elements())) {
    throw Error(ErrorCode::NotIndependent, "mother elements are linearly dependent");
  }

  const auto in = static_cast<Eigen::Index>(n);
  std::vector<double> p(2 * n * n * kk);
  auto at = [&](std::size_t i, std::size_t j, std::size_t k) -> double& {
    return p[(i * n + j) * kk + k];
  };
  for (std::size_t k = 0; k < kk; ++k) {
    Eigen::MatrixXd s(in, in);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j)
        s(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = row_map(i, j, k);
    }
    double worst = 0.0;
    for (Eigen::Index j = 0; j < in; ++j) {
      const double defect = std::abs(s.col(j).sum() - 1.0);
      if (defect > 1e-8) {
        throw Error(ErrorCode::ColumnSumViolation,
                    "column " + std::to_string(j + 1) + " of slice " + std::to_string(k + 1) +
                        " sums to 1 only within " + format_magnitude(defect),
                    static_cast<std::size_t>(j), k, defect);
      }
      worst = std::max(worst, defect);
    }
    // Tolerated column defects are balanced away so the map stays exactly
    // symmetric and normalized.
    if (worst > kZeroTol) {
      if (auto b = sinkhorn(s)) s = *b;
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const double v = s(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        at(i, j, k) = v;
        at(n + j, i, k) = v;
      }
    }
  }
  return PostProcessingMap(2 * n, n, kk, std::move(p));
}

PseudoMother pseudo_mother(std::span<const Povm> measurements, std::span<const std::size_t> order) {
  if (measurements.empty()) throw Error(ErrorCode::InvalidArgument, "no measurements given");
  PseudoMother pm;
  pm.num_measurements = measurements.size();
  pm.num_outcomes = measurements.front().size();
  const Eigen::Index d = measurements.front().dim();
  for (std::size_t i = 0; i < measurements.size(); ++i) {
    if (measurements[i].size() != pm.num_outcomes || measurements[i].dim() != d) {
      throw Error(ErrorCode::DimensionMismatch, "measurements differ in shape", i);
    }
  }
  if (order.empty()) {
    pm.order.resize(pm.num_measurements);
    std::iota(pm.order.begin(), pm.order.end(), std::size_t{0});
  } else {
    pm.order.assign(order.begin(), order.end());
    std::vector<std::size_t> sorted = pm.order;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
      if (sorted.size() != pm.num_measurements || sorted[i] != i) {
        throw Error(ErrorCode::InvalidArgument, "order is not a permutation of the measurements");
      }
    }
  }
  const auto total = checked_power(pm.num_outcomes, pm.num_measurements, kMaxJointOutcomes);
  if (!total) throw Error(ErrorCode::InstanceTooLarge, "n^m exceeds the joint outcome cap");

  CMatrix sum = -CMatrix::Identity(d, d);
  for (std::size_t k = 0; k < *total; ++k) {
    const auto b = outcome_tuple(k, pm.num_outcomes, pm.num_measurements);
    CMatrix prod = CMatrix::Identity(d, d);
    for (std::size_t o : pm.order) prod = prod * measurements[o][b[o]].mat();
    const bool herm = max_norm(prod - prod.adjoint()) <= kHermTol;
    pm.hermitian.push_back(herm);
    pm.psd.push_back(herm && is_psd(HermitianMatrix::symmetrize(prod)).psd);
    sum += prod;
    pm.elements.push_back(std::move(prod));
  }
  pm.normalization_defect = max_norm(sum);
  return pm;
}

CMatrix pseudo_marginal(const PseudoMother& pm, std::size_t i, std::size_t j) {
  if (i >= pm.num_measurements || j >= pm.num_outcomes) {
    throw Error(ErrorCode::IndexOutOfRange, "marginal index out of range", i, j);
  }
  CMatrix acc = CMatrix::Zero(pm.elements.front().rows(), pm.elements.front().cols());
  for (std::size_t k = 0; k < pm.elements.size(); ++k) {
    if (outcome_tuple(k, pm.num_outcomes, pm.num_measurements)[i] == j) acc += pm.elements[k];
  }
  return acc;
}

double pseudo_mother_reproduction_error(const PseudoMother& pm,
                                        std::span<const Povm> measurements) {
  if (measurements.size() != pm.num_measurements) {
    throw Error(ErrorCode::DimensionMismatch, "measurement count differs from the pseudo-mother");
  }
  double e = 0.0;
  for (std::size_t i = 0; i < pm.num_measurements; ++i) {
    for (std::size_t j = 0; j < pm.num_outcomes; ++j) {
      e = std::max(e, max_norm(pseudo_marginal(pm, i, j) - measurements[i][j].mat()));
    }
  }
  return e;
}

double affine_residual(const Dnt& d, std::span<const HermitianMatrix> coeffs) {
  return grid_distance(combine_permutation_tensors(static_cast<int>(d.n()), coeffs), d.grid());
}

AffineDecomposition affine_decompose(const Dnt& d) {
  const std::size_t n = d.n();
  if (n > kMaxDecomposeN) throw Error(ErrorCode::NTooLarge, "decomposition limited to n <= 4");
  const int in = static_cast<int>(n);
  const auto perms = enumerate_permutations(in);
  const auto nl = static_cast<Eigen::Index>(perms.size());
  const Eigen::Index dim = d.dim();
  const auto cells = static_cast<Eigen::Index>(n * n);

  Eigen::MatrixXd incidence = Eigen::MatrixXd::Zero(cells, nl);
  for (Eigen::Index l = 0; l < nl; ++l) {
    for (int b = 0; b < in; ++b) incidence(perms[static_cast<std::size_t>(l)](b) * in + b, l) = 1.0;
  }
  Eigen::MatrixXd targets(cells, dim * dim);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      targets.row(static_cast<Eigen::Index>(i * n + j)) =
          hermitian_coords(d(i, j).mat()).transpose();
    }
  }
  const Eigen::MatrixXd x = incidence.completeOrthogonalDecomposition().solve(targets);

  AffineDecomposition out;
  out.n = in;
  for (Eigen::Index l = 0; l < nl; ++l) {
    out.coefficients.push_back(
        HermitianMatrix::symmetrize(hermitian_from_coords(x.row(l).transpose(), dim)));
    out.psd_flags.push_back(is_psd(out.coefficients.back()).psd);
  }
  out.residual = affine_residual(d, out.coefficients);
  out.success = out.residual <= 1e-8;
  return out;
}

MotherMeasurement mother_of_trivial_pair(const Dnt& d) {
  const std::size_t n = d.n();
  std::vector<HermitianMatrix> m;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      m.push_back(HermitianMatrix::symmetrize(d(a, b).mat() / static_cast<double>(n)));
    }
  }
  return {Povm(std::move(m)), marginal_map(2, n)};
}

Dnt dnt_from_trivial_mother(const Grid& mother_grid) {
  check_square(mother_grid);
  const std::size_t n = mother_grid.size();
  const Eigen::Index d = mother_grid.front().front().dim();
  const CMatrix target = CMatrix::Identity(d, d) / static_cast<double>(n);
  for (int pass = 0; pass < 2; ++pass) {
    for (std::size_t i = 0; i < n; ++i) {
      CMatrix s = -target;
      for (std::size_t t = 0; t < n; ++t)
        s += pass == 0 ? mother_grid[i][t].mat() : mother_grid[t][i].mat();
      const double defect = max_norm(s);
      if (defect > kPsdTol) {
        throw Error(ErrorCode::BadMarginals,
                    std::string(pass == 0 ? "row " : "column ") + std::to_string(i + 1) +
                        " marginal misses I/n by " + format_magnitude(defect),
                    i, std::nullopt, defect);
      }
    }
  }
  Grid g;
  for (const auto& r : mother_grid) {
    std::vector<HermitianMatrix> row;
    for (const auto& m : r)
      row.push_back(HermitianMatrix::symmetrize(m.mat() * static_cast<double>(n)));
    g.push_back(std::move(row));
  }
  return Dnt(std::move(g));
}

Dnt dnt_from_trivial_mother(const Povm& mother) {
  const auto n =
      static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(mother.size()))));
  if (n * n != mother.size()) {
    throw Error(ErrorCode::BadCardinality, "mother outcome count is not a square");
  }
  Grid g(n);
  for (std::size_t k = 0; k < mother.size(); ++k) g[k / n].push_back(mother[k]);
  return dnt_from_trivial_mother(g);
}

DntExtremalityReport dnt_is_extremal(const Dnt& d) {
  const std::size_t n = d.n();
  const Eigen::Index dim = d.dim();
  if (n > 4 || dim > 4)
    throw Error(ErrorCode::InvalidArgument, "extremality test limited to n, d <= 4");
  const Eigen::Index coords = dim * dim;
  std::vector<Eigen::VectorXd> cols;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const CMatrix v = support_basis(d(i, j));
      const Eigen::Index r = v.cols();
      for (Eigen::Index e = 0; e < r * r; ++e) {
        const Eigen::VectorXd c = hermitian_coords(v * hermitian_basis(e, r) * v.adjoint());
        Eigen::VectorXd col = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(2 * n) * coords);
        col.segment(static_cast<Eigen::Index>(i) * coords, coords) = c;
        col.segment(static_cast<Eigen::Index>(n + j) * coords, coords) = c;
        cols.push_back(std::move(col));
      }
    }
  }
  DntExtremalityReport out;
  if (!cols.empty()) {
    Eigen::MatrixXd map(cols.front().size(), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t c = 0; c < cols.size(); ++c) map.col(static_cast<Eigen::Index>(c)) = cols[c];
    out.kernel_dimension = cols.size() - static_cast<std::size_t>(numerical_rank(map));
  }
  out.extremal = out.kernel_dimension == 0;
  out.rows_columns_extremal = true;
  for (const auto& p : rows(d)) out.rows_columns_extremal &= povm_is_extremal(p).extremal;
  for (const auto& p : columns(d)) out.rows_columns_extremal &= povm_is_extremal(p).extremal;
  return out;
}

namespace {

struct TrineParts {
  HermitianMatrix a1, a2, a3, a1p, a1pp;
};

TrineParts trine_parts() {
  const CMatrix id = CMatrix::Identity(2, 2);
  const CMatrix x = pauli_x().mat();
  const CMatrix z = pauli_z().mat();
  const double r3 = std::sqrt(3.0);
  return {HermitianMatrix((id + x) / 3.0), HermitianMatrix((id - (x - r3 * z) / 2.0) / 3.0),
          HermitianMatrix((id - (x + r3 * z) / 2.0) / 3.0), HermitianMatrix(x / 3.0),
          HermitianMatrix(id / 3.0)};
}

}  // namespace

Povm trine_povm() {
  const TrineParts t = trine_parts();
  return Povm({t.a1, t.a2, t.a3});
}

Dnt build_trine_dnt() {
  const TrineParts t = trine_parts();
  return Dnt(
      {{t.a1p + t.a1pp, t.a2, t.a3}, {t.a2, t.a1p + t.a3, t.a1pp}, {t.a3, t.a1pp, t.a1p + t.a2}});
}

Dnt random_dnt(std::size_t n, Eigen::Index d, std::uint64_t seed, RandomDntMethod method) {
  if (n < 1 || n > 4 || d < 1 || d > 4) {
    throw Error(ErrorCode::InvalidArgument, "random tensors limited to 1 <= n, d <= 4");
  }
  if (method == RandomDntMethod::Coefficient) {
    return synthesize(random_povm(factorial(static_cast<int>(n)), d, seed));
  }

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Grid g(n);
  for (auto& row : g) {
    for (std::size_t j = 0; j < n; ++j) {
      CMatrix w(d, d);
      for (Eigen::Index r = 0; r < d; ++r) {
        for (Eigen::Index c = 0; c < d; ++c) {
          const double re = normal(rng);
          const double im = normal(rng);
          w(r, c) = Complex(re, im) / std::sqrt(2.0);
        }
      }
      row.push_back(HermitianMatrix::symmetrize(w * w.adjoint()));
    }
  }
  auto normalize = [&](bool by_row) {
    for (std::size_t i = 0; i < n; ++i) {
      HermitianMatrix s = HermitianMatrix::zero(d);
      for (std::size_t t = 0; t < n; ++t) s += by_row ? g[i][t] : g[t][i];
      const CMatrix f = psd_inv_sqrt(s, 1e-12).mat();
      for (std::size_t t = 0; t < n; ++t) {
        HermitianMatrix& a = by_row ? g[i][t] : g[t][i];
        a = HermitianMatrix::symmetrize(f * a.mat() * f);
      }
    }
  };
  double defect = std::numeric_limits<double>::infinity();
  for (int it = 0; it < 500; ++it) {
    normalize(true);
    normalize(false);
    defect = 0.0;
    for (std::size_t i = 0; i < n; ++i) defect = std::max(defect, line_defect(g, i, true));
    if (defect <= 1e-10) return Dnt(std::move(g));
  }
  throw Error(ErrorCode::SinkhornNotConverged,
              "operator scaling left a row defect of " + format_magnitude(defect), std::nullopt,
              std::nullopt, defect);
}

}  // namespace dntkit
