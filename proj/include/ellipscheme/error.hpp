#ifndef ELLIPSCHEME_ERROR_HPP
#define ELLIPSCHEME_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace ellipscheme {

enum class ErrorCode {
    Parse,
    NotSquarefree,
    SignAmbiguous,
    BadNewtonPolygon,
    DegreeOverflow,
    NonGeneric,
    DegenerateEndpoint,
    PerturbationFailed,
    NotRefinementShaped,
    CertificationFailed,
    UnclassifiableOval,
    NotIsolated,
    CollapseNotLocal,
    NoStabilization,
    NotAllowed,
    NotInFamily,
    OutOfRange,
    InvalidFixture,
};

inline std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::Parse: return "Parse";
    case ErrorCode::NotSquarefree: return "NotSquarefree";
    case ErrorCode::SignAmbiguous: return "SignAmbiguous";
    case ErrorCode::BadNewtonPolygon: return "BadNewtonPolygon";
    case ErrorCode::DegreeOverflow: return "DegreeOverflow";
    case ErrorCode::NonGeneric: return "NonGeneric";
    case ErrorCode::DegenerateEndpoint: return "DegenerateEndpoint";
    case ErrorCode::PerturbationFailed: return "PerturbationFailed";
    case ErrorCode::NotRefinementShaped: return "NotRefinementShaped";
    case ErrorCode::CertificationFailed: return "CertificationFailed";
    case ErrorCode::UnclassifiableOval: return "UnclassifiableOval";
    case ErrorCode::NotIsolated: return "NotIsolated";
    case ErrorCode::CollapseNotLocal: return "CollapseNotLocal";
    case ErrorCode::NoStabilization: return "NoStabilization";
    case ErrorCode::NotAllowed: return "NotAllowed";
    case ErrorCode::NotInFamily: return "NotInFamily";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::InvalidFixture: return "InvalidFixture";
    }
    return "Unknown";
}

/// Errors that signal a broken internal invariant rather than bad input.
inline bool is_internal(ErrorCode code) {
    return code == ErrorCode::SignAmbiguous || code == ErrorCode::CertificationFailed ||
           code == ErrorCode::DegenerateEndpoint;
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace ellipscheme

#endif // ELLIPSCHEME_ERROR_HPP
