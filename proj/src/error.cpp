#include "su/error.hpp"

namespace su {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError: return "PARSE_ERROR";
    case ErrorCode::EmptyContent: return "EMPTY_CONTENT";
    case ErrorCode::UnknownUnitClass: return "UNKNOWN_UNIT_CLASS";
    case ErrorCode::UnknownUnit: return "UNKNOWN_UNIT";
    case ErrorCode::DanglingMember: return "DANGLING_MEMBER";
    case ErrorCode::EmptyMembers: return "EMPTY_MEMBERS";
    case ErrorCode::CyclicComposition: return "CYCLIC_COMPOSITION";
    case ErrorCode::UnboundHole: return "UNBOUND_HOLE";
    case ErrorCode::ShapeMismatch: return "SHAPE_MISMATCH";
    case ErrorCode::MixedQuantifiers: return "MIXED_QUANTIFIERS";
    case ErrorCode::UnclassedInstance: return "UNCLASSED_INSTANCE";
    case ErrorCode::SatisfactionFails: return "SATISFACTION_FAILS";
    case ErrorCode::NotComposable: return "NOT_COMPOSABLE";
    case ErrorCode::NotUniversal: return "NOT_UNIVERSAL";
    case ErrorCode::UnknownVariable: return "UNKNOWN_VARIABLE";
    case ErrorCode::OverlappingSets: return "OVERLAPPING_SETS";
    case ErrorCode::CyclicGraph: return "CYCLIC_GRAPH";
    case ErrorCode::DomainTooLarge: return "DOMAIN_TOO_LARGE";
    case ErrorCode::ZeroProbabilityEvidence: return "ZERO_PROBABILITY_EVIDENCE";
    case ErrorCode::InvalidAdjustmentSet: return "INVALID_ADJUSTMENT_SET";
    case ErrorCode::InvalidMediatorSet: return "INVALID_MEDIATOR_SET";
    case ErrorCode::NotAChain: return "NOT_A_CHAIN";
    case ErrorCode::NonNumericOutcome: return "NON_NUMERIC_OUTCOME";
    case ErrorCode::NotDeterministicForm: return "NOT_DETERMINISTIC_FORM";
    case ErrorCode::InvalidScm: return "INVALID_SCM";
    case ErrorCode::MalformedHead: return "MALFORMED_HEAD";
    case ErrorCode::InvalidRequest: return "INVALID_REQUEST";
    case ErrorCode::NotFound: return "NOT_FOUND";
    case ErrorCode::StoreLoadError: return "STORE_LOAD_ERROR";
    case ErrorCode::AddressInUse: return "ADDRESS_IN_USE";
  }
  return "UNKNOWN";
}

}  // namespace su
