#include "dntkit/jointmeas.hpp"

#include <string>

namespace dntkit {

JmInstance::JmInstance(std::vector<Povm> povms) : povms_(std::move(povms)) {
  if (povms_.empty()) throw Error(ErrorCode::InvalidArgument, "instance needs at least one POVM");
  const std::size_t n = povms_.front().size();
  const Eigen::Index d = povms_.front().dim();
  for (std::size_t i = 0; i < povms_.size(); ++i) {
    if (povms_[i].size() != n) {
      throw Error(ErrorCode::DimensionMismatch, "POVMs differ in outcome count", i);
    }
    if (povms_[i].dim() != d)
      throw Error(ErrorCode::DimensionMismatch, "POVMs differ in dimension", i);
  }
  auto joint = checked_power(n, povms_.size(), kMaxJointOutcomes);
  if (!joint) {
    throw Error(ErrorCode::InstanceTooLarge,
                "n^m exceeds " + std::to_string(kMaxJointOutcomes) + " joint outcomes");
  }
  joint_ = *joint;
}

HermitianMatrix marginal_operator(std::span<const HermitianMatrix> g, std::size_t n, std::size_t m,
                                  std::size_t i, std::size_t j) {
  if (i >= m || j >= n)
    throw Error(ErrorCode::IndexOutOfRange, "marginal index out of range", i, j);
  auto expected = checked_power(n, m, g.size());
  if (!expected || *expected != g.size() || g.empty()) {
    throw Error(ErrorCode::DimensionMismatch, "operator count is not n^m");
  }
  HermitianMatrix acc = HermitianMatrix::zero(g.front().dim());
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (outcome_tuple(k, n, m)[i] == j) acc += g[k];
  }
  return acc;
}

PostProcessingMap marginal_map(std::size_t m, std::size_t n) {
  auto joint = checked_power(n, m, kMaxJointOutcomes);
  if (!joint) throw Error(ErrorCode::InstanceTooLarge, "n^m exceeds the joint outcome cap");
  std::vector<double> p(m * n * *joint, 0.0);
  for (std::size_t k = 0; k < *joint; ++k) {
    const auto t = outcome_tuple(k, n, m);
    for (std::size_t i = 0; i < m; ++i) p[(i * n + t[i]) * *joint + k] = 1.0;
  }
  return PostProcessingMap(m, n, *joint, std::move(p));
}

namespace {

// Constraints sum_{k_i = j} <B_e, G_k> [- eta <B_e, A - tI>] = rhs for every
// (i, j) and every Hermitian basis element B_e. With `with_eta`, the targets
// are the depolarized POVMs and blocks K, K+1 hold eta and its slack.
SdpProblem parent_problem(const JmInstance& inst, bool with_eta) {
  const std::size_t m = inst.num_measurements();
  const std::size_t n = inst.num_outcomes();
  const std::size_t kk = inst.num_joint_outcomes();
  const Eigen::Index d = inst.dim();
  SdpProblem p;
  p.block_dims.assign(kk, d);
  if (with_eta) {
    p.block_dims.push_back(1);
    p.block_dims.push_back(1);
    p.sense = Sense::Maximize;
    p.objective.push_back({kk, HermitianMatrix::identity(1)});
  }
  std::vector<HermitianMatrix> basis;
  for (Eigen::Index e = 0; e < d * d; ++e) basis.emplace_back(hermitian_basis(e, d));

  std::vector<std::vector<std::size_t>> tuples(kk);
  for (std::size_t k = 0; k < kk; ++k) tuples[k] = outcome_tuple(k, n, m);

  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const HermitianMatrix& a = inst.povms()[i][j];
      const HermitianMatrix noise =
          (a.trace() / static_cast<double>(d)) * HermitianMatrix::identity(d);
      for (const auto& b : basis) {
        SdpConstraint c;
        for (std::size_t k = 0; k < kk; ++k) {
          if (tuples[k][i] == j) c.terms.push_back({k, b});
        }
        if (with_eta) {
          const double coef = -frobenius_inner(b, a - noise);
          c.terms.push_back({kk, HermitianMatrix(CMatrix::Constant(1, 1, Complex(coef, 0.0)))});
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
    cap.terms.push_back({kk, HermitianMatrix::identity(1)});
    cap.terms.push_back({kk + 1, HermitianMatrix::identity(1)});
    cap.rhs = 1.0;
    p.constraints.push_back(std::move(cap));
  }
  return p;
}

}  // namespace

JmVerdict jm_check(const JmInstance& instance, double tol, const SdpOptions& opts) {
  const std::size_t kk = instance.num_joint_outcomes();
  const SdpSolution sol = solve(parent_problem(instance, true), opts);
  if (sol.status != SdpStatus::Optimal) {
    throw Error(ErrorCode::SolverFailure,
                std::string("robustness program ended with status ") + to_string(sol.status));
  }
  JmVerdict v;
  v.robustness = sol.primal_blocks[kk](0, 0).real();
  v.compatible = v.robustness >= 1.0 - tol;
  v.solver_status = sol.status;
  v.solver_residuals = sol.residuals;
  if (!v.compatible) return v;

  const SdpSolution ref = solve(parent_problem(instance, false), opts);
  if (ref.status != SdpStatus::Optimal) {
    throw Error(ErrorCode::SolverFailure,
                std::string("mother refinement ended with status ") + to_string(ref.status));
  }
  std::vector<HermitianMatrix> g(ref.primal_blocks.begin(),
                                 ref.primal_blocks.begin() + static_cast<std::ptrdiff_t>(kk));
  MotherMeasurement mother{Povm(renormalize(g)),
                           marginal_map(instance.num_measurements(), instance.num_outcomes())};
  const double err = reproduction_error(mother, instance.povms());
  if (err > 1e-7) {
    throw Error(ErrorCode::SolverFailure,
                "refined mother reproduces the instance only within " + format_magnitude(err),
                std::nullopt, std::nullopt, err);
  }
  v.mother = std::move(mother);
  return v;
}

}  // namespace dntkit
