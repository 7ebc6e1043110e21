#pragma once

#include <stdexcept>
#include <string>

namespace grouplab {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RankDeficientError : Error {
    using Error::Error;
};
struct UnsupportedError : Error {
    using Error::Error;
};
struct InvalidShapeError : Error {
    using Error::Error;
};
struct TooLargeError : Error {
    using Error::Error;
};
struct FieldMismatchError : Error {
    using Error::Error;
};
struct NotComfortableError : Error {
    using Error::Error;
};
struct MeasureTooSmallError : Error {
    using Error::Error;
};
struct MultiplicityTooHighError : Error {
    using Error::Error;
};
struct InsufficientSamplesError : Error {
    using Error::Error;
};
struct NonIntegerResultError : Error {
    using Error::Error;
};
struct ConfigError : Error {
    using Error::Error;
};

}  // namespace grouplab
