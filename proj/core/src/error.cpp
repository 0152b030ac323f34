#include "qseg/error.hpp"

namespace qseg {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::OperandOutOfRange: return "OperandOutOfRange";
    case Errc::DuplicateOperand: return "DuplicateOperand";
    case Errc::ArityMismatch: return "ArityMismatch";
    case Errc::ResetMergesBranches: return "ResetMergesBranches";
    case Errc::DenseLimitExceeded: return "DenseLimitExceeded";
    case Errc::CheckFailed: return "CheckFailed";
    case Errc::OperandOverlap: return "OperandOverlap";
    case Errc::WidthMismatch: return "WidthMismatch";
    case Errc::NotPowerOfTwoSide: return "NotPowerOfTwoSide";
    case Errc::PixelOutOfRange: return "PixelOutOfRange";
    case Errc::AmbiguousPixel: return "AmbiguousPixel";
    case Errc::MissingPixel: return "MissingPixel";
    case Errc::NonUniformPositions: return "NonUniformPositions";
    case Errc::ZPreconditionViolated: return "ZPreconditionViolated";
    case Errc::ZOutOfRange: return "ZOutOfRange";
    case Errc::EvenLength: return "EvenLength";
    case Errc::TOutOfRange: return "TOutOfRange";
    case Errc::ShapeMismatch: return "ShapeMismatch";
    case Errc::UnsupportedWindow: return "UnsupportedWindow";
    case Errc::MalformedPgm: return "MalformedPgm";
    case Errc::NonSquare: return "NonSquare";
    case Errc::MaxvalNotSupported: return "MaxvalNotSupported";
    case Errc::IoError: return "IoError";
    case Errc::QasmParseError: return "QasmParseError";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::OracleMismatch: return "OracleMismatch";
  }
  return "Unknown";
}

int exit_code(Errc code) noexcept { return 10 + static_cast<int>(code); }

}  // namespace qseg
