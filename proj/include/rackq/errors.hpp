#pragma once

#include <stdexcept>
#include <string>

namespace rackq {

// Exit-code classes used by the CLI:
//   ParseError      -> 2   (malformed input files / element syntax)
//   ValidationError -> 3   (axiom or precondition failures on well-formed input)
//   ResourceError   -> 4   (an enumeration or degree cap was hit)
//   InternalError   -> 5   (an internal invariant we assert did not hold; a bug)
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : Error {
    int line = 0;
    int col = 0;
    ParseError(const std::string& msg, int line_ = 0, int col_ = 0)
        : Error(line_ > 0 ? msg + " (line " + std::to_string(line_) +
                                (col_ > 0 ? ", col " + std::to_string(col_) : "") + ")"
                          : msg),
          line(line_), col(col_) {}
};

struct ValidationError : Error {
    using Error::Error;
};

struct ResourceError : Error {
    using Error::Error;
};

struct InternalError : Error {
    using Error::Error;
};

// validation failures with payloads
struct MalformedGrid : ValidationError {
    using ValidationError::ValidationError;
};

struct NotABijection : ValidationError {
    int row;
    explicit NotABijection(int x)
        : ValidationError("row " + std::to_string(x) + " of the operation table is not a bijection"),
          row(x) {}
};

struct SelfDistributivityFails : ValidationError {
    int x, y, z;
    SelfDistributivityFails(int x_, int y_, int z_)
        : ValidationError("self-distributivity fails at (" + std::to_string(x_) + ", " +
                          std::to_string(y_) + ", " + std::to_string(z_) + ")"),
          x(x_), y(y_), z(z_) {}
};

struct NotCentralizing : ValidationError {
    using ValidationError::ValidationError;
};

struct NotGenerating : ValidationError {
    using ValidationError::ValidationError;
};

struct NotNormallyGenerating : ValidationError {
    using ValidationError::ValidationError;
};

struct NotAnAutomorphism : ValidationError {
    using ValidationError::ValidationError;
};

struct DifferentComponents : ValidationError {
    using ValidationError::ValidationError;
};

struct NotACocycle : ValidationError {
    using ValidationError::ValidationError;
};

struct DegenerateValueNonzero : ValidationError {
    using ValidationError::ValidationError;
};

// resource caps
struct GroupTooLarge : ResourceError {
    using ResourceError::ResourceError;
};

struct DegreeTooLarge : ResourceError {
    using ResourceError::ResourceError;
};

struct CapExceeded : ResourceError {
    using ResourceError::ResourceError;
};

// Assert an invariant that should hold by construction; failure means a bug, not bad input.
#define RACKQ_ASSERT(cond, msg)                                             \
    do {                                                                    \
        if (!(cond)) throw ::rackq::InternalError(std::string("internal invariant violated: ") + (msg)); \
    } while (0)

} // namespace rackq
