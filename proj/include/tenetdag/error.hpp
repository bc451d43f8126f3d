#pragma once

#include <stdexcept>
#include <string>

namespace tenetdag {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define TENETDAG_ERROR(Name)                  \
    class Name : public Error {               \
    public:                                   \
        using Error::Error;                   \
    }

// value encoding
TENETDAG_ERROR(UnsupportedValueType);
// graph structure and transformation
TENETDAG_ERROR(CycleDetected);
TENETDAG_ERROR(UnresolvedControl);
TENETDAG_ERROR(PartialAssignment);
TENETDAG_ERROR(GraphParseError);
// signing
TENETDAG_ERROR(TopologyMismatch);
TENETDAG_ERROR(MissingLayer);
TENETDAG_ERROR(MissingField);
TENETDAG_ERROR(MatrixParseError);
// records
TENETDAG_ERROR(RecordParseError);
TENETDAG_ERROR(RecordValidationError);
// numerics
TENETDAG_ERROR(NonPowerOfTwoLength);
TENETDAG_ERROR(ZeroVector);
TENETDAG_ERROR(InvalidArgument);

#undef TENETDAG_ERROR

} // namespace tenetdag
