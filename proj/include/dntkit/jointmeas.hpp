#pragma once

// Joint measurability of finite POVM sets through the parent-measurement SDP.

#include <optional>
#include <span>
#include <vector>

#include "dntkit/povm.hpp"
#include "dntkit/sdp.hpp"

namespace dntkit {

inline constexpr std::size_t kMaxJointOutcomes = 4096;

/// m POVMs sharing outcome count n and dimension d, with n^m <= 4096.
class JmInstance {
 public:
  explicit JmInstance(std::vector<Povm> povms);

  const std::vector<Povm>& povms() const { return povms_; }
  std::size_t num_measurements() const { return povms_.size(); }
  std::size_t num_outcomes() const { return povms_.front().size(); }
  Eigen::Index dim() const { return povms_.front().dim(); }
  // n^m, the number of joint outcomes k = (k_1, ..., k_m).
  std::size_t num_joint_outcomes() const { return joint_; }

 private:
  std::vector<Povm> povms_;
  std::size_t joint_ = 0;
};

struct JmVerdict {
  bool compatible = false;
  double robustness = 0.0;  // eta*
  // Present iff compatible; marginal post-processing mu(j|i,k) = [k_i = j].
  std::optional<MotherMeasurement> mother;
  SdpStatus solver_status = SdpStatus::NumericalLimit;
  SdpResiduals solver_residuals;
};

/// Solves  max eta  s.t.  G_k >= 0,
///   sum_{k : k_i = j} G_k = eta A^(i)_j + (1 - eta) tr(A^(i)_j)/d I,  eta <= 1,
/// and declares the set compatible when eta* >= 1 - tol.
JmVerdict jm_check(const JmInstance& instance, double tol = 1e-6, const SdpOptions& opts = {});

/// Sum of G_k over joint outcomes k in [n]^m with k_i = j; g has n^m entries
/// in outcome_tuple order.
HermitianMatrix marginal_operator(std::span<const HermitianMatrix> g, std::size_t n, std::size_t m,
                                  std::size_t i, std::size_t j);

/// Deterministic marginal map for m measurements with n outcomes each.
PostProcessingMap marginal_map(std::size_t m, std::size_t n);

}  // namespace dntkit
