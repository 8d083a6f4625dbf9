#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>

namespace dntkit {

enum class ErrorCode {
  InvalidArgument,
  NonFinite,
  NonHermitianInput,
  ConvergenceFailure,
  DimensionMismatch,
  NTooLarge,
  NotDoublyStochastic,
  NoPerfectMatching,
  NotPsd,
  NotNormalized,
  SingularNormalizer,
  EmptyConstraintSystem,
  SolverFailure,
  InstanceTooLarge,
  IndexOutOfRange,
  EntryNotPsd,
  RowNotNormalized,
  ColumnNotNormalized,
  BadCardinality,
  AsymmetricMap,
  SliceNotDoublyStochastic,
  ReproductionFailure,
  NotIndependent,
  ColumnSumViolation,
  BadMarginals,
  SinkhornNotConverged,
  FormatError,
};

const char* to_string(ErrorCode code);

// Short %g rendering of a measured magnitude for error messages.
std::string format_magnitude(double v);

// Every failure in the library is reported through this type. `index` and
// `index2` carry the offending position (row/column, measurement/outcome)
// when the error has one; `magnitude` carries the measured defect.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what, std::optional<std::size_t> index = std::nullopt,
        std::optional<std::size_t> index2 = std::nullopt,
        double magnitude = std::numeric_limits<double>::quiet_NaN())
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code),
        index_(index),
        index2_(index2),
        magnitude_(magnitude) {}

  ErrorCode code() const noexcept { return code_; }
  std::optional<std::size_t> index() const noexcept { return index_; }
  std::optional<std::size_t> index2() const noexcept { return index2_; }
  double magnitude() const noexcept { return magnitude_; }

 private:
  ErrorCode code_;
  std::optional<std::size_t> index_;
  std::optional<std::size_t> index2_;
  double magnitude_;
};

}  // namespace dntkit
