// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The mpuforge authors
/**
 * @file
 * Exception hierarchy shared by every module.  Each error carries a kind so the
 * command-line tool can map failures onto stable exit codes.
 */
#pragma once

#include <stdexcept>
#include <string>

namespace mpuforge {

enum class ErrorKind {
    Validation,   ///< input violates a documented contract (e.g. non-unitary MPU)
    Resource,     ///< a configured dimension cap would be exceeded
    Unsupported,  ///< MPU outside the supported class (bond rank deficiency)
    Shape,        ///< mismatched dimensions or non-square/non-Hermitian operands
    NotPsd,       ///< eigenvalue below the negative tolerance
    Numerical,    ///< an iterative kernel failed to converge
    Precondition, ///< caller broke an operation precondition
    Io,           ///< file or JSON problems
};

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string &what) : std::runtime_error(what), kind_(kind) {}
    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

  private:
    ErrorKind kind_;
};

#define MPUFORGE_ERROR_TYPE(Name, Kind)                                                        \
    class Name : public Error {                                                                \
      public:                                                                                  \
        explicit Name(const std::string &what) : Error(ErrorKind::Kind, what) {}               \
    }

MPUFORGE_ERROR_TYPE(ValidationError, Validation);
MPUFORGE_ERROR_TYPE(ResourceError, Resource);
MPUFORGE_ERROR_TYPE(UnsupportedError, Unsupported);
MPUFORGE_ERROR_TYPE(ShapeError, Shape);
MPUFORGE_ERROR_TYPE(NotPsdError, NotPsd);
MPUFORGE_ERROR_TYPE(NumericalError, Numerical);
MPUFORGE_ERROR_TYPE(PreconditionError, Precondition);
MPUFORGE_ERROR_TYPE(IoError, Io);

#undef MPUFORGE_ERROR_TYPE

/// Exit code contract of the command-line tool.
inline int exit_code_for(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::Resource:
        return 3;
    case ErrorKind::Unsupported:
        return 4;
    default:
        return 2;
    }
}

} // namespace mpuforge
