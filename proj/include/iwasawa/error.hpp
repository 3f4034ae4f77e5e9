#pragma once

#include <stdexcept>
#include <string>

namespace iwasawa {

enum class ErrorCode {
    MalformedInput,
    NonAssociative,
    NoIdentity,
    NoInverse,
    NotAutomorphism,
    OrderNotPPower,
    InternalPrimeSearchFailed,
    NotAUnit,
    NotASubfield,
    NoRootInResidue,
    InconsistentOrbit,
    FieldOutOfRange,
    SpecMismatch,
    IndexNotDividing,
    PrecisionLoss,
    BackendUnavailable,
    DegreesNotCoprime,
    TwistMismatch,
    InvalidArgument,
};

const char* error_code_name(ErrorCode code);

/** Library exception; `code()` is stable across releases. */
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

}  // namespace iwasawa
