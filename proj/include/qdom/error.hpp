#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qdom {

enum class ErrorCode {
  InvalidArgument,
  DimMismatch,
  NotHermitian,
  NoConvergence,
  NotNormalized,
  InvalidState,
  BadTargets,
  ZeroProbability,
  NotProjection,
  NotMonotone,
  NoFixedPoint,
  CapExceeded,
  NotFoundAtDepth,
  OutOfDomain,
  SyntaxError,
  NotConverged,
  Untranslatable,
};

std::string_view to_string(ErrorCode code);

/// Base of every exception thrown by the library. The code identifies the
/// failure class so callers (the CLI in particular) can branch on it.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t line, std::size_t col, std::string expected, const std::string& found)
      : Error(ErrorCode::SyntaxError, std::to_string(line) + ":" + std::to_string(col) +
                                          ": expected " + expected + ", found " + found),
        line_(line),
        col_(col),
        expected_(std::move(expected)) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t col() const noexcept { return col_; }
  const std::string& expected() const noexcept { return expected_; }

 private:
  std::size_t line_;
  std::size_t col_;
  std::string expected_;
};

/// Raised when the gate-word search ran out of depth. Density of the word
/// states is not in question, only the depth cap.
class NotFoundAtDepth : public Error {
 public:
  NotFoundAtDepth(double best_distance, std::size_t max_len)
      : Error(ErrorCode::NotFoundAtDepth, "best distance " + std::to_string(best_distance) +
                                              " at depth " + std::to_string(max_len)),
        best_distance_(best_distance) {}

  double best_distance() const noexcept { return best_distance_; }

 private:
  double best_distance_;
};

class NotConverged : public Error {
 public:
  explicit NotConverged(double residual)
      : Error(ErrorCode::NotConverged, "loop did not converge, residual " + std::to_string(residual)),
        residual_(residual) {}

  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

}  // namespace qdom
