#pragma once

#include <stdexcept>
#include <string>

namespace tensorpaint {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// File-level failure; kind identifies the case callers may branch on.
class IoError : public Error {
public:
    enum class Kind { missing_file, unsupported_format, corrupt_stream, unwritable };

    IoError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

// Two buffers that must match in width/height/channels do not.
class DimensionError : public Error {
public:
    using Error::Error;
};

// A parameter is outside its documented range.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

// The mask covers every pixel, leaving no boundary data to interpolate from.
class FullMaskError : public Error {
public:
    using Error::Error;
};

// A solver produced a non-finite value.
class DivergenceError : public Error {
public:
    DivergenceError(int iteration, const std::string& what)
        : Error(what), iteration_(iteration) {}
    int iteration() const { return iteration_; }

private:
    int iteration_ = -1;
};

}  // namespace tensorpaint
