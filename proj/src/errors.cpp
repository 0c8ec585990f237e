#include "carl/errors.hpp"

namespace carl {

std::string_view to_string(ErrorCode code) noexcept
{
    switch (code) {
    case ErrorCode::invalid_params: return "invalid_params";
    case ErrorCode::degenerate_spectrum: return "degenerate_spectrum";
    case ErrorCode::not_stable: return "not_stable";
    case ErrorCode::tolerance_not_met: return "tolerance_not_met";
    case ErrorCode::negative_occupation: return "negative_occupation";
    case ErrorCode::undefined_correlation: return "undefined_correlation";
    case ErrorCode::not_hermitian: return "not_hermitian";
    case ErrorCode::regime_mismatch: return "regime_mismatch";
    case ErrorCode::imaginary_residue: return "imaginary_residue";
    case ErrorCode::invalid_spec: return "invalid_spec";
    }
    return "unknown";
}

bool is_input_error(ErrorCode code) noexcept
{
    return code == ErrorCode::invalid_params || code == ErrorCode::invalid_spec;
}

} // namespace carl
