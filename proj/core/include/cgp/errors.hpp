#pragma once

#include <stdexcept>
#include <string>

namespace cgp {

/// Machine-readable error categories shared by the library and the CLI.
enum class ErrorKind {
    ParseError,
    NotAdmissible,
    NotComputable,
    NumericInstability,
    NonTypicalColor,
    CriticalDegree,
    NotProjective,
    NotScalar,
    BoundaryMismatch,
    InvalidDiagram,
    VanishingDenominator,
    NoSection,
    NoProjectiveEdge,
    CannotStabilize,
    NotIsotropic,
    NotLagrangian,
    DegenerateBasis,
};

const char* error_kind_name(ErrorKind kind);

/// Process exit code associated with an error category.
int error_exit_code(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace cgp
