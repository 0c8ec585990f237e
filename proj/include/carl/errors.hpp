// errors.hpp  Error codes and exception types used across the library

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace carl {

enum class ErrorCode {
    invalid_params,
    degenerate_spectrum,
    not_stable,
    tolerance_not_met,
    negative_occupation,
    undefined_correlation,
    not_hermitian,
    regime_mismatch,
    imaginary_residue,
    invalid_spec,
};

// Stable machine-readable name, e.g. "degenerate_spectrum".
std::string_view to_string(ErrorCode code) noexcept;

// Input errors map to exit code 2 in the CLI, everything else is numerical (3).
bool is_input_error(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

template <ErrorCode Code>
class CodedError : public Error {
public:
    explicit CodedError(const std::string& what) : Error(Code, what) {}
};

using InvalidParams = CodedError<ErrorCode::invalid_params>;
using DegenerateSpectrum = CodedError<ErrorCode::degenerate_spectrum>;
using NotStable = CodedError<ErrorCode::not_stable>;
using ToleranceNotMet = CodedError<ErrorCode::tolerance_not_met>;
using NegativeOccupation = CodedError<ErrorCode::negative_occupation>;
using UndefinedCorrelation = CodedError<ErrorCode::undefined_correlation>;
using NotHermitian = CodedError<ErrorCode::not_hermitian>;
using RegimeMismatch = CodedError<ErrorCode::regime_mismatch>;
using ImaginaryResidue = CodedError<ErrorCode::imaginary_residue>;
using InvalidSpec = CodedError<ErrorCode::invalid_spec>;

} // namespace carl
