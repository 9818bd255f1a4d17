#pragma once

#include <stdexcept>
#include <string>

namespace ifd {

// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A spec or config value violates an invariant. Carries the offending field
// (dotted path for nested config keys).
class InvalidSpec : public Error {
public:
    InvalidSpec(std::string field, std::string message)
        : Error(field + ": " + message),
          field_(std::move(field)),
          message_(std::move(message)) {}

    const std::string& field() const noexcept { return field_; }
    const std::string& message() const noexcept { return message_; }

private:
    std::string field_;
    std::string message_;
};

// SNR denominator is exactly zero (no signal and no dark counts).
struct DegenerateNoise : Error {
    using Error::Error;
};

// J_A == J_P: the photon-number inversion has no solution.
struct ZeroContrast : Error {
    using Error::Error;
};

// A(xi) == 0: zeta grows without bound in N0, no interior optimum exists.
struct UnboundedInN0 : Error {
    using Error::Error;
};

// A sweep or search was handed an empty grid.
struct EmptyGrid : Error {
    using Error::Error;
};

// Root polishing failed to reach the residual tolerance.
struct NoConvergence : Error {
    using Error::Error;
};

}  // namespace ifd
