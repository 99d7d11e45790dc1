#include "paradoxlab/error.hpp"

namespace paradoxlab {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NegativeMonoidExponent: return "NegativeMonoidExponent";
    case ErrorKind::NonInvertible: return "NonInvertible";
    case ErrorKind::SizeLimit: return "SizeLimit";
    case ErrorKind::MissingBit: return "MissingBit";
    case ErrorKind::Unsatisfiable: return "Unsatisfiable";
    case ErrorKind::VerificationFailed: return "VerificationFailed";
    case ErrorKind::NotAWitness: return "NotAWitness";
    case ErrorKind::CoverageGap: return "CoverageGap";
    case ErrorKind::UnsupportedFormat: return "UnsupportedFormat";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::Parse: return "Parse";
  }
  return "Unknown";
}

}  // namespace paradoxlab
