#include "iwasawa/error.hpp"

namespace iwasawa {

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::MalformedInput: return "MalformedInput";
        case ErrorCode::NonAssociative: return "NonAssociative";
        case ErrorCode::NoIdentity: return "NoIdentity";
        case ErrorCode::NoInverse: return "NoInverse";
        case ErrorCode::NotAutomorphism: return "NotAutomorphism";
        case ErrorCode::OrderNotPPower: return "OrderNotPPower";
        case ErrorCode::InternalPrimeSearchFailed: return "InternalPrimeSearchFailed";
        case ErrorCode::NotAUnit: return "NotAUnit";
        case ErrorCode::NotASubfield: return "NotASubfield";
        case ErrorCode::NoRootInResidue: return "NoRootInResidue";
        case ErrorCode::InconsistentOrbit: return "InconsistentOrbit";
        case ErrorCode::FieldOutOfRange: return "FieldOutOfRange";
        case ErrorCode::SpecMismatch: return "SpecMismatch";
        case ErrorCode::IndexNotDividing: return "IndexNotDividing";
        case ErrorCode::PrecisionLoss: return "PrecisionLoss";
        case ErrorCode::BackendUnavailable: return "BackendUnavailable";
        case ErrorCode::DegreesNotCoprime: return "DegreesNotCoprime";
        case ErrorCode::TwistMismatch: return "TwistMismatch";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

}  // namespace iwasawa
