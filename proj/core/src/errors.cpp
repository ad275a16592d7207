#include "cgp/errors.hpp"

namespace cgp {

const char* error_kind_name(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::NotAdmissible: return "NotAdmissible";
        case ErrorKind::NotComputable: return "NotComputable";
        case ErrorKind::NumericInstability: return "NumericInstability";
        case ErrorKind::NonTypicalColor: return "NonTypicalColor";
        case ErrorKind::CriticalDegree: return "CriticalDegree";
        case ErrorKind::NotProjective: return "NotProjective";
        case ErrorKind::NotScalar: return "NotScalar";
        case ErrorKind::BoundaryMismatch: return "BoundaryMismatch";
        case ErrorKind::InvalidDiagram: return "InvalidDiagram";
        case ErrorKind::VanishingDenominator: return "VanishingDenominator";
        case ErrorKind::NoSection: return "NoSection";
        case ErrorKind::NoProjectiveEdge: return "NoProjectiveEdge";
        case ErrorKind::CannotStabilize: return "CannotStabilize";
        case ErrorKind::NotIsotropic: return "NotIsotropic";
        case ErrorKind::NotLagrangian: return "NotLagrangian";
        case ErrorKind::DegenerateBasis: return "DegenerateBasis";
    }
    return "Unknown";
}

int error_exit_code(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::ParseError: return 2;
        case ErrorKind::NotComputable: return 3;
        case ErrorKind::NotAdmissible: return 4;
        case ErrorKind::NumericInstability: return 5;
        default: return 1;
    }
}

}  // namespace cgp
