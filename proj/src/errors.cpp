#include "bjorling/errors.hpp"

namespace bjorling {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::DomainMismatch: return "DomainMismatch";
    case ErrorCode::ImageEscapesDomain: return "ImageEscapesDomain";
    case ErrorCode::RefitResidualTooLarge: return "RefitResidualTooLarge";
    case ErrorCode::NotTimelike: return "NotTimelike";
    case ErrorCode::ValidationFailed: return "ValidationFailed";
    case ErrorCode::TruncationInsufficient: return "TruncationInsufficient";
    case ErrorCode::DegenerateNormal: return "DegenerateNormal";
    case ErrorCode::NotImmersed: return "NotImmersed";
    case ErrorCode::ParallelTangents: return "ParallelTangents";
    case ErrorCode::IsotropyCertificateFailed: return "IsotropyCertificateFailed";
    case ErrorCode::NotInJn: return "NotInJn";
    case ErrorCode::DegeneratePlane: return "DegeneratePlane";
    case ErrorCode::ReFNotZero: return "ReFNotZero";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::DomainEscape: return "DomainEscape";
    case ErrorCode::NoDescent: return "NoDescent";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
  }
  return "UnknownError";
}

}  // namespace bjorling
