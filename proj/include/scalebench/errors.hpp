#pragma once

#include <stdexcept>
#include <string>

namespace scalebench {

// Error taxonomy mirrors the CLI exit contract: validation failures map to
// exit code 2, I/O failures to exit code 1. `code` is a stable machine-readable
// identifier ("EmptySample", "MissingHeader", ...), `what()` the human detail.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

class ValidationError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace scalebench
