#include "dntkit/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>

namespace dntkit {

const char* to_string(SdpStatus s) {
  switch (s) {
    case SdpStatus::Optimal: return "Optimal";
    case SdpStatus::PrimalInfeasible: return "PrimalInfeasible";
    case SdpStatus::DualInfeasible: return "DualInfeasible";
    case SdpStatus::NumericalLimit: return "NumericalLimit";
  }
  return "Unknown";
}

Eigen::MatrixXd real_embedding(const CMatrix& h) {
  const Eigen::Index d = h.rows();
  Eigen::MatrixXd w(2 * d, 2 * d);
  w.topLeftCorner(d, d) = h.real();
  w.topRightCorner(d, d) = -h.imag();
  w.bottomLeftCorner(d, d) = h.imag();
  w.bottomRightCorner(d, d) = h.real();
  return w;
}

CMatrix extract_from_embedding(const Eigen::MatrixXd& w) {
  const Eigen::Index d = w.rows() / 2;
  CMatrix h(d, d);
  h.real() = (w.topLeftCorner(d, d) + w.bottomRightCorner(d, d)) / 2.0;
  h.imag() = (w.bottomLeftCorner(d, d) - w.topRightCorner(d, d)) / 2.0;
  return h;
}

bool ScalingReport::identity() const {
  return dropped.empty() &&
         std::all_of(row_scale.begin(), row_scale.end(), [](double s) { return s == 1.0; });
}

namespace {

void check_problem(const SdpProblem& p) {
  if (p.block_dims.empty()) throw Error(ErrorCode::InvalidArgument, "SDP needs at least one block");
  for (auto d : p.block_dims) {
    if (d <= 0) throw Error(ErrorCode::InvalidArgument, "block dimensions must be positive");
  }
  auto check_term = [&](const SdpTerm& t) {
    if (t.block >= p.block_dims.size()) {
      throw Error(ErrorCode::IndexOutOfRange, "term refers to a missing block", t.block);
    }
    if (t.coeff.dim() != p.block_dims[t.block]) {
      throw Error(ErrorCode::DimensionMismatch, "coefficient does not match its block", t.block);
    }
  };
  for (const auto& t : p.objective) check_term(t);
  for (const auto& c : p.constraints) {
    for (const auto& t : c.terms) check_term(t);
    if (!std::isfinite(c.rhs)) throw Error(ErrorCode::NonFinite, "non-finite right-hand side");
  }
}

std::map<std::size_t, CMatrix> merged_terms(const SdpConstraint& c) {
  std::map<std::size_t, CMatrix> out;
  for (const auto& t : c.terms) {
    auto it = out.find(t.block);
    if (it == out.end()) {
      out.emplace(t.block, t.coeff.mat());
    } else {
      it->second += t.coeff.mat();
    }
  }
  return out;
}

}  // namespace

Preconditioned precondition(const SdpProblem& problem) {
  check_problem(problem);
  std::vector<Eigen::Index> offset(problem.block_dims.size() + 1, 0);
  for (std::size_t b = 0; b < problem.block_dims.size(); ++b) {
    offset[b + 1] = offset[b] + problem.block_dims[b] * problem.block_dims[b];
  }
  const Eigen::Index total = offset.back();

  Preconditioned out;
  out.problem.block_dims = problem.block_dims;
  out.problem.sense = problem.sense;
  out.problem.objective = problem.objective;
  auto& rep = out.report;

  std::vector<Eigen::VectorXd> basis;
  std::vector<double> basis_rhs;
  for (std::size_t c = 0; c < problem.constraints.size(); ++c) {
    const auto terms = merged_terms(problem.constraints[c]);
    double maxabs = 0.0;
    for (const auto& [b, m] : terms) maxabs = std::max(maxabs, max_norm(m));
    double scale = 1.0;
    if (maxabs > 0.0 && (maxabs < 1e-3 || maxabs > 1e3)) scale = 1.0 / maxabs;
    rep.row_scale.push_back(scale);
    const double rhs = scale * problem.constraints[c].rhs;

    Eigen::VectorXd v = Eigen::VectorXd::Zero(total);
    for (const auto& [b, m] : terms) {
      v.segment(offset[b], offset[b + 1] - offset[b]) = scale * hermitian_coords(m);
    }
    const double vnorm = v.norm();
    Eigen::VectorXd w = v;
    double rho = rhs;
    // Two Gram-Schmidt passes keep the residual norm accurate for
    // nearly dependent rows.
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t q = 0; q < basis.size(); ++q) {
        const double t = basis[q].dot(w);
        w -= t * basis[q];
        rho -= t * basis_rhs[q];
      }
    }
    const double wnorm = w.norm();
    if (vnorm == 0.0 || wnorm <= 1e-10 * vnorm) {
      rep.dropped.push_back(c);
      if (std::abs(rho) > 1e-8 * (1.0 + std::abs(rhs))) rep.inconsistent.push_back(c);
      continue;
    }
    basis.push_back(w / wnorm);
    basis_rhs.push_back(rho / wnorm);
    rep.kept.push_back(c);

    SdpConstraint sc;
    sc.rhs = rhs;
    for (const auto& [b, m] : terms) sc.terms.push_back({b, HermitianMatrix(scale * m)});
    out.problem.constraints.push_back(std::move(sc));
  }
  if (out.problem.constraints.empty()) {
    throw Error(ErrorCode::EmptyConstraintSystem, "no independent constraint remains");
  }
  return out;
}

namespace {

using Blocks = std::vector<Eigen::MatrixXd>;

struct Entry {
  Eigen::Index row;
  Eigen::MatrixXd a;
};

// Internal problem: minimize <C, X> s.t. A(X) = b over real symmetric blocks.
struct RealProblem {
  std::vector<Eigen::Index> dims;
  Blocks c;
  std::vector<std::vector<Entry>> entries;  // per block
  Eigen::VectorXd b;
  Eigen::Index total_dim = 0;
};

RealProblem build_real(const SdpProblem& p) {
  RealProblem rp;
  const double sign = p.sense == Sense::Maximize ? -1.0 : 1.0;
  for (auto d : p.block_dims) {
    rp.dims.push_back(2 * d);
    rp.c.push_back(Eigen::MatrixXd::Zero(2 * d, 2 * d));
    rp.total_dim += 2 * d;
  }
  rp.entries.resize(p.block_dims.size());
  for (const auto& t : p.objective) rp.c[t.block] += sign * real_embedding(t.coeff.mat()) / 2.0;
  rp.b.resize(static_cast<Eigen::Index>(p.constraints.size()));
  for (std::size_t r = 0; r < p.constraints.size(); ++r) {
    rp.b(static_cast<Eigen::Index>(r)) = p.constraints[r].rhs;
    for (const auto& t : p.constraints[r].terms) {
      rp.entries[t.block].push_back(
          {static_cast<Eigen::Index>(r), real_embedding(t.coeff.mat()) / 2.0});
    }
  }
  return rp;
}

double inner(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) { return a.cwiseProduct(b).sum(); }

double inner(const Blocks& a, const Blocks& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += inner(a[k], b[k]);
  return s;
}

Eigen::VectorXd apply_a(const RealProblem& p, const Blocks& x) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(p.b.size());
  for (std::size_t k = 0; k < x.size(); ++k) {
    for (const auto& e : p.entries[k]) out(e.row) += inner(e.a, x[k]);
  }
  return out;
}

Blocks apply_at(const RealProblem& p, const Eigen::VectorXd& y) {
  Blocks out;
  out.reserve(p.dims.size());
  for (std::size_t k = 0; k < p.dims.size(); ++k) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(p.dims[k], p.dims[k]);
    for (const auto& e : p.entries[k]) m += y(e.row) * e.a;
    out.push_back(std::move(m));
  }
  return out;
}

Eigen::MatrixXd sym(const Eigen::MatrixXd& m) { return (m + m.transpose()) / 2.0; }

// Largest alpha with x + alpha dx PSD (infinity if unbounded); 0 if x is
// not numerically positive definite.
double max_step(const Eigen::MatrixXd& x, const Eigen::MatrixXd& dx) {
  Eigen::LLT<Eigen::MatrixXd> llt(x);
  if (llt.info() != Eigen::Success) return 0.0;
  Eigen::MatrixXd t = llt.matrixL().solve(dx);
  t = llt.matrixL().solve(t.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym(t), Eigen::EigenvaluesOnly);
  const double lo = es.eigenvalues()(0);
  return lo >= 0.0 ? std::numeric_limits<double>::infinity() : -1.0 / lo;
}

struct State {
  Blocks x, z;
  Eigen::VectorXd y;
  double tau = 1.0;
  double kappa = 1.0;
};

struct Direction {
  Blocks dx, dz;
  Eigen::VectorXd dy;
  double dtau = 0.0;
  double dkappa = 0.0;
};

struct Evaluation {
  SdpSolution sol;
  bool optimal = false;
};

class Solver {
 public:
  Solver(const SdpProblem& original, const Preconditioned& pc, const SdpOptions& opts)
      : orig_(original), pc_(pc), opts_(opts), rp_(build_real(pc.problem)) {
    m_ = rp_.b.size();
    nb_ = rp_.dims.size();
    for (const auto& t : orig_.objective) c_max_ = std::max(c_max_, max_norm(t.coeff.mat()));
  }

  SdpSolution run() {
    State s;
    // The residual to complementarity ratio is fixed by the starting point,
    // so X starts at a multiple of I sized to the right-hand side.
    Blocks ident;
    for (auto d : rp_.dims) ident.push_back(Eigen::MatrixXd::Identity(d, d));
    const double ai = apply_a(rp_, ident).norm();
    const double xi = ai > 0.0 ? std::clamp(rp_.b.norm() / ai, 1e-3, 1.0) : 1.0;
    for (auto& m : ident) {
      s.x.push_back(xi * m);
      s.z.push_back(m);
    }
    s.y = Eigen::VectorXd::Zero(m_);
    double last_alpha = 1.0;
    for (int iter = 0;; ++iter) {
      Evaluation ev = evaluate(s);
      ev.sol.iterations = iter;
      if (ev.optimal) return finish(std::move(ev.sol));
      if (auto cert = infeasibility(s, iter)) return *cert;
      if (iter >= opts_.max_iters) return finish(std::move(ev.sol));

      const double mu = complementarity(s);
      auto step = compute_step(s, mu, last_alpha);
      if (!step) return finish(std::move(ev.sol));
      const auto& [dir, alpha] = *step;
      if (!(alpha > 1e-12)) return finish(std::move(ev.sol));
      for (std::size_t k = 0; k < nb_; ++k) {
        s.x[k] = sym(s.x[k] + alpha * dir.dx[k]);
        s.z[k] = sym(s.z[k] + alpha * dir.dz[k]);
      }
      s.y += alpha * dir.dy;
      s.tau += alpha * dir.dtau;
      s.kappa += alpha * dir.dkappa;
      last_alpha = alpha;
    }
  }

 private:
  SdpSolution finish(SdpSolution sol) {
    sol.dropped_constraints = pc_.report.dropped;
    return sol;
  }

  double complementarity(const State& s) const {
    return (inner(s.x, s.z) + s.tau * s.kappa) / static_cast<double>(rp_.total_dim + 1);
  }

  // Residuals and objectives of the normalized iterate, measured on the
  // caller's complex problem.
  Evaluation evaluate(const State& s) const {
    Evaluation ev;
    SdpSolution& sol = ev.sol;
    sol.status = SdpStatus::NumericalLimit;
    const double sign = orig_.sense == Sense::Maximize ? -1.0 : 1.0;
    for (std::size_t k = 0; k < nb_; ++k) {
      sol.primal_blocks.push_back(
          HermitianMatrix::symmetrize(extract_from_embedding(s.x[k]) / s.tau));
    }
    const auto& rep = pc_.report;
    sol.dual_vector.assign(orig_.constraints.size(), 0.0);
    for (std::size_t r = 0; r < rep.kept.size(); ++r) {
      const std::size_t c = rep.kept[r];
      sol.dual_vector[c] = sign * rep.row_scale[c] * s.y(static_cast<Eigen::Index>(r)) / s.tau;
    }
    double pobj = 0.0;
    for (const auto& t : orig_.objective)
      pobj += frobenius_inner(t.coeff, sol.primal_blocks[t.block]);
    double dobj = 0.0;
    double dobj_mass = 0.0;
    double peq = 0.0;
    for (std::size_t c = 0; c < orig_.constraints.size(); ++c) {
      const auto& con = orig_.constraints[c];
      double v = 0.0;
      for (const auto& t : con.terms) v += frobenius_inner(t.coeff, sol.primal_blocks[t.block]);
      peq = std::max(peq, std::abs(v - con.rhs) / (1.0 + std::abs(con.rhs)));
      dobj += sol.dual_vector[c] * con.rhs;
      dobj_mass += std::abs(sol.dual_vector[c] * con.rhs);
    }
    // Dual slack defect C - A^T y - Z of the internal problem; row scaling
    // leaves it unchanged and the embedding doubles it.
    const Blocks aty = apply_at(rp_, s.y);
    double deq = 0.0;
    for (std::size_t k = 0; k < nb_; ++k) {
      const Eigen::MatrixXd r = rp_.c[k] * s.tau - aty[k] - s.z[k];
      deq = std::max(deq, max_norm(extract_from_embedding(r)) * 2.0 / s.tau);
    }
    deq /= 1.0 + c_max_;
    sol.primal_objective = pobj;
    sol.dual_objective = dobj;
    sol.residuals = {peq, deq, std::abs(pobj - dobj) / (1.0 + std::abs(pobj) + std::abs(dobj))};
    // A dual objective that is mostly cancellation between huge multipliers
    // certifies nothing.
    const double dobj_noise = dobj_mass * std::numeric_limits<double>::epsilon() *
                              static_cast<double>(orig_.constraints.size());
    ev.optimal = std::isfinite(peq) && std::isfinite(deq) && peq <= opts_.tol && deq <= opts_.tol &&
                 sol.residuals.gap <= opts_.tol &&
                 dobj_noise <= opts_.tol * (1.0 + std::abs(pobj) + std::abs(dobj));
    if (ev.optimal) sol.status = SdpStatus::Optimal;
    return ev;
  }

  std::optional<SdpSolution> infeasibility(const State& s, int iter) const {
    if (s.kappa <= s.tau) return std::nullopt;
    const double by = rp_.b.dot(s.y);
    if (by > 0.0) {
      const Blocks aty = apply_at(rp_, s.y);
      double n2 = 0.0;
      for (std::size_t k = 0; k < nb_; ++k) n2 += (aty[k] + s.z[k]).squaredNorm();
      if (std::sqrt(n2) <= opts_.tol * by) {
        SdpSolution sol = certificate(s, SdpStatus::PrimalInfeasible, iter);
        const double sign = orig_.sense == Sense::Maximize ? -1.0 : 1.0;
        const auto& rep = pc_.report;
        for (std::size_t r = 0; r < rep.kept.size(); ++r) {
          const std::size_t c = rep.kept[r];
          sol.dual_vector[c] = sign * rep.row_scale[c] * s.y(static_cast<Eigen::Index>(r)) / by;
        }
        return sol;
      }
    }
    const double cx = inner(rp_.c, s.x);
    if (cx < 0.0) {
      const double ax = apply_a(rp_, s.x).norm();
      if (ax <= opts_.tol * -cx) {
        SdpSolution sol = certificate(s, SdpStatus::DualInfeasible, iter);
        for (std::size_t k = 0; k < nb_; ++k) {
          sol.primal_blocks[k] = HermitianMatrix::symmetrize(extract_from_embedding(s.x[k]) / -cx);
        }
        return sol;
      }
    }
    return std::nullopt;
  }

  SdpSolution certificate(const State& s, SdpStatus status, int iter) const {
    SdpSolution sol;
    sol.status = status;
    sol.iterations = iter;
    for (std::size_t k = 0; k < nb_; ++k) {
      sol.primal_blocks.push_back(HermitianMatrix::symmetrize(extract_from_embedding(s.x[k])));
    }
    sol.dual_vector.assign(orig_.constraints.size(), 0.0);
    sol.residuals = {std::numeric_limits<double>::infinity(),
                     std::numeric_limits<double>::infinity(),
                     std::numeric_limits<double>::infinity()};
    sol.dropped_constraints = pc_.report.dropped;
    return sol;
  }

  // Linear system of one Newton step, factored once per iteration.
  struct Factor {
    Blocks zinv, uc;
    std::vector<std::vector<Eigen::MatrixXd>> u;  // per block, per entry: X A Z^{-1}
    Eigen::VectorXd g;
    double cuc = 0.0;
    Eigen::PartialPivLU<Eigen::MatrixXd> lu;
  };

  std::optional<Factor> factor(const State& s) const {
    Factor f;
    Eigen::MatrixXd mm = Eigen::MatrixXd::Zero(m_, m_);
    f.g = Eigen::VectorXd::Zero(m_);
    f.u.resize(nb_);
    for (std::size_t k = 0; k < nb_; ++k) {
      Eigen::LLT<Eigen::MatrixXd> llt(s.z[k]);
      if (llt.info() != Eigen::Success) return std::nullopt;
      const Eigen::Index d = rp_.dims[k];
      Eigen::MatrixXd zinv = llt.solve(Eigen::MatrixXd::Identity(d, d));
      zinv = sym(zinv);
      const auto& es = rp_.entries[k];
      auto& uk = f.u[k];
      uk.reserve(es.size());
      for (const auto& e : es) uk.push_back(s.x[k] * e.a * zinv);
      for (std::size_t i = 0; i < es.size(); ++i) {
        for (std::size_t j = 0; j < es.size(); ++j) {
          mm(es[i].row, es[j].row) += inner(es[i].a, uk[j]);
        }
      }
      Eigen::MatrixXd uc = s.x[k] * rp_.c[k] * zinv;
      for (const auto& e : es) f.g(e.row) += inner(e.a, uc);
      f.cuc += inner(rp_.c[k], uc);
      f.uc.push_back(sym(uc));
      f.zinv.push_back(std::move(zinv));
    }
    Eigen::MatrixXd kk(m_ + 1, m_ + 1);
    kk.topLeftCorner(m_, m_) = mm;
    kk.topRightCorner(m_, 1) = -(f.g + rp_.b);
    kk.bottomLeftCorner(1, m_) = (rp_.b - f.g).transpose();
    kk(m_, m_) = f.cuc + s.kappa / s.tau;
    f.lu.compute(kk);
    return f;
  }

  // Solves for the direction with complementarity target sigma*mu,
  // residual reduction eta and optional second-order terms.
  std::optional<Direction> direction(const State& s, const Factor& f, double sigma_mu, double eta,
                                     const Direction* second) const {
    const Eigen::VectorXd r1 = rp_.b * s.tau - apply_a(rp_, s.x);
    const Blocks aty = apply_at(rp_, s.y);
    Blocks r2(nb_);
    for (std::size_t k = 0; k < nb_; ++k) r2[k] = aty[k] - rp_.c[k] * s.tau + s.z[k];
    const double r3 = inner(rp_.c, s.x) - rp_.b.dot(s.y) + s.kappa;

    Blocks rr(nb_), ur(nb_);
    for (std::size_t k = 0; k < nb_; ++k) {
      rr[k] = sigma_mu * f.zinv[k] - s.x[k];
      if (second) rr[k] -= second->dx[k] * second->dz[k] * f.zinv[k];
      rr[k] = sym(rr[k]);
      ur[k] = sym(s.x[k] * r2[k] * f.zinv[k]);
    }
    double kappa_rhs = sigma_mu - s.tau * s.kappa;
    if (second) kappa_rhs -= second->dtau * second->dkappa;

    Eigen::VectorXd rhs(m_ + 1);
    rhs.head(m_) = eta * r1 - apply_a(rp_, rr) - eta * apply_a(rp_, ur);
    rhs(m_) = eta * r3 + inner(rp_.c, rr) + eta * inner(rp_.c, ur) + kappa_rhs / s.tau;
    Eigen::VectorXd sol = f.lu.solve(rhs);
    if (!sol.allFinite()) return std::nullopt;

    auto expand = [&](const Eigen::VectorXd& v) {
      Direction dir;
      dir.dy = v.head(m_);
      dir.dtau = v(m_);
      dir.dkappa = (kappa_rhs - s.kappa * dir.dtau) / s.tau;
      const Blocks atdy = apply_at(rp_, dir.dy);
      dir.dx.resize(nb_);
      dir.dz.resize(nb_);
      for (std::size_t k = 0; k < nb_; ++k) {
        dir.dz[k] = sym(-atdy[k] + rp_.c[k] * dir.dtau - eta * r2[k]);
        dir.dx[k] = sym(rr[k] - s.x[k] * dir.dz[k] * f.zinv[k]);
      }
      return dir;
    };
    // Defect of the linearized primal and tau equations, evaluated on the
    // expanded direction rather than on the reduced system.
    auto defect = [&](const Direction& dir) {
      Eigen::VectorXd e(m_ + 1);
      e.head(m_) = apply_a(rp_, dir.dx) - rp_.b * dir.dtau - eta * r1;
      e(m_) = rp_.b.dot(dir.dy) + s.kappa / s.tau * dir.dtau - inner(rp_.c, dir.dx) - eta * r3 -
              kappa_rhs / s.tau;
      return e;
    };

    Direction dir = expand(sol);
    Eigen::VectorXd e = defect(dir);
    // Iterative refinement; near the optimum Z^{-1} is badly conditioned and
    // the expanded direction drifts from the reduced solution.
    for (int round = 0; round < 3 && e.allFinite(); ++round) {
      const Eigen::VectorXd next_sol = sol - f.lu.solve(e);
      if (!next_sol.allFinite()) break;
      Direction next = expand(next_sol);
      Eigen::VectorXd next_e = defect(next);
      if (!(next_e.norm() < 0.5 * e.norm())) break;
      sol = next_sol;
      dir = std::move(next);
      e = std::move(next_e);
    }
    return dir;
  }

  double step_length(const State& s, const Direction& d) const {
    double a = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < nb_; ++k) {
      a = std::min(a, max_step(s.x[k], d.dx[k]));
      a = std::min(a, max_step(s.z[k], d.dz[k]));
    }
    if (d.dtau < 0.0) a = std::min(a, -s.tau / d.dtau);
    if (d.dkappa < 0.0) a = std::min(a, -s.kappa / d.dkappa);
    return std::min(1.0, 0.98 * a);
  }

  std::optional<std::pair<Direction, double>> compute_step(const State& s, double mu,
                                                           double last_alpha) const {
    auto f = factor(s);
    if (!f) return std::nullopt;
    if (!opts_.predictor_corrector) {
      const double sigma = last_alpha < 0.3 ? 0.5 : 0.1;
      auto dir = direction(s, *f, sigma * mu, 1.0 - sigma, nullptr);
      if (!dir) return std::nullopt;
      const double alpha = step_length(s, *dir);
      return std::make_pair(std::move(*dir), alpha);
    }
    auto pred = direction(s, *f, 0.0, 1.0, nullptr);
    if (!pred) return std::nullopt;
    const double ap = step_length(s, *pred);
    double xz = s.tau * s.kappa + ap * (s.tau * pred->dkappa + s.kappa * pred->dtau) +
                ap * ap * pred->dtau * pred->dkappa;
    for (std::size_t k = 0; k < nb_; ++k) {
      xz += inner(s.x[k] + ap * pred->dx[k], s.z[k] + ap * pred->dz[k]);
    }
    const double mu_aff = xz / static_cast<double>(rp_.total_dim + 1);
    const double sigma = std::clamp(std::pow(std::max(mu_aff, 0.0) / mu, 3.0), 0.0, 1.0);
    auto corr = direction(s, *f, sigma * mu, 1.0 - sigma, &*pred);
    if (!corr) return std::nullopt;
    const double alpha = step_length(s, *corr);
    return std::make_pair(std::move(*corr), alpha);
  }

  const SdpProblem& orig_;
  const Preconditioned& pc_;
  SdpOptions opts_;
  RealProblem rp_;
  Eigen::Index m_ = 0;
  std::size_t nb_ = 0;
  double c_max_ = 0.0;
};

}  // namespace

SdpSolution solve(const SdpProblem& problem, const SdpOptions& opts) {
  const Preconditioned pc = precondition(problem);
  if (!pc.report.inconsistent.empty()) {
    SdpSolution sol;
    sol.status = SdpStatus::PrimalInfeasible;
    for (auto d : problem.block_dims) sol.primal_blocks.push_back(HermitianMatrix::zero(d));
    sol.dual_vector.assign(problem.constraints.size(), 0.0);
    sol.residuals = {std::numeric_limits<double>::infinity(),
                     std::numeric_limits<double>::infinity(),
                     std::numeric_limits<double>::infinity()};
    sol.dropped_constraints = pc.report.dropped;
    return sol;
  }
  Solver solver(problem, pc, opts);
  return solver.run();
}

}  // namespace dntkit
