#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ctsc {

enum class Errc {
    ZeroSymbolNorm,
    ShapeMismatch,
    NonPositivePower,
    DegenerateChannel,
    NonFiniteCandidate,
    DegenerateDenominator,
    SolverDidNotConverge,
    BadMagic,
    VersionMismatch,
    TruncatedPayload,
    TrailingBytes,
    ShapeOverflow,
    IoFailure,
    InvalidConfig,
};

std::string_view to_string(Errc code);

/// Base exception for every recoverable failure in the library. The code is
/// what callers branch on; the message is for humans.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

}  // namespace ctsc
