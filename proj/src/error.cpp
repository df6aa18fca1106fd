#include "ctsc/error.hpp"

namespace ctsc {

std::string_view to_string(Errc code) {
    switch (code) {
        case Errc::ZeroSymbolNorm: return "ZeroSymbolNorm";
        case Errc::ShapeMismatch: return "ShapeMismatch";
        case Errc::NonPositivePower: return "NonPositivePower";
        case Errc::DegenerateChannel: return "DegenerateChannel";
        case Errc::NonFiniteCandidate: return "NonFiniteCandidate";
        case Errc::DegenerateDenominator: return "DegenerateDenominator";
        case Errc::SolverDidNotConverge: return "SolverDidNotConverge";
        case Errc::BadMagic: return "BadMagic";
        case Errc::VersionMismatch: return "VersionMismatch";
        case Errc::TruncatedPayload: return "TruncatedPayload";
        case Errc::TrailingBytes: return "TrailingBytes";
        case Errc::ShapeOverflow: return "ShapeOverflow";
        case Errc::IoFailure: return "IoFailure";
        case Errc::InvalidConfig: return "InvalidConfig";
    }
    return "Unknown";
}

}  // namespace ctsc
