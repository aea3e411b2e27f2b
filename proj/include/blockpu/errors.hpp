#pragma once

#include <stdexcept>
#include <string>

namespace blockpu {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define BLOCKPU_DEFINE_ERROR(Name)                   \
    class Name : public Error {                      \
    public:                                          \
        explicit Name(const std::string& what)       \
            : Error(std::string(#Name ": ") + what)   \
        {}                                           \
    }

BLOCKPU_DEFINE_ERROR(DegenerateInput);
BLOCKPU_DEFINE_ERROR(EmptyReduction);
BLOCKPU_DEFINE_ERROR(PointOutsideBox);
BLOCKPU_DEFINE_ERROR(SupportExceedsNeighborhood);
BLOCKPU_DEFINE_ERROR(InsufficientCoverage);
BLOCKPU_DEFINE_ERROR(NoActiveSubdomain);
BLOCKPU_DEFINE_ERROR(SingularLocalSystem);
BLOCKPU_DEFINE_ERROR(LengthMismatch);
BLOCKPU_DEFINE_ERROR(DegenerateRatio);
BLOCKPU_DEFINE_ERROR(SameBasin);
BLOCKPU_DEFINE_ERROR(InvalidArgument);
BLOCKPU_DEFINE_ERROR(IoError);

#undef BLOCKPU_DEFINE_ERROR

} // namespace blockpu
