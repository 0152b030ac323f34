#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qseg {

enum class Errc {
  OperandOutOfRange = 1,
  DuplicateOperand,
  ArityMismatch,
  ResetMergesBranches,
  DenseLimitExceeded,
  CheckFailed,
  OperandOverlap,
  WidthMismatch,
  NotPowerOfTwoSide,
  PixelOutOfRange,
  AmbiguousPixel,
  MissingPixel,
  NonUniformPositions,
  ZPreconditionViolated,
  ZOutOfRange,
  EvenLength,
  TOutOfRange,
  ShapeMismatch,
  UnsupportedWindow,
  MalformedPgm,
  NonSquare,
  MaxvalNotSupported,
  IoError,
  QasmParseError,
  InvalidArgument,
  OracleMismatch,
};

std::string_view errc_name(Errc code) noexcept;

// Process exit status used by the CLI for each error kind.
int exit_code(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

struct PixelPos {
  std::size_t y = 0;
  std::size_t x = 0;
  friend bool operator==(const PixelPos&, const PixelPos&) = default;
};

class ZPreconditionError : public Error {
 public:
  ZPreconditionError(std::vector<PixelPos> offending, const std::string& message)
      : Error(Errc::ZPreconditionViolated, message), offending_(std::move(offending)) {}

  const std::vector<PixelPos>& offending() const noexcept { return offending_; }

 private:
  std::vector<PixelPos> offending_;
};

}  // namespace qseg
