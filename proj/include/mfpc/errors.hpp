#ifndef MFPC_ERRORS_HPP
#define MFPC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace mfpc {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Data validation
struct EmptyMatrix : Error { using Error::Error; };
struct NonFiniteEntry : Error { using Error::Error; };
struct LabelOutOfRange : Error { using Error::Error; };

// Linear algebra
struct EmptyMemberSet : Error { using Error::Error; };
struct ZeroDirection : Error { using Error::Error; };
struct ConvergenceFailure : Error { using Error::Error; };

// Solvers
struct InnerSolverStall : Error { using Error::Error; };
struct ZeroColumn : Error { using Error::Error; };
struct EmptyClusterUnrecoverable : Error { using Error::Error; };

// I/O
struct ParseError : Error { using Error::Error; };
struct MissingFile : Error { using Error::Error; };
struct UnknownDataset : Error { using Error::Error; };
struct LengthMismatch : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };

}  // namespace mfpc

#endif  // MFPC_ERRORS_HPP
