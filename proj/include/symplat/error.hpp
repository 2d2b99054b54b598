#pragma once

#include <stdexcept>
#include <string>

namespace symplat {

// Invalid input or violated precondition.  The CLI maps this to exit code 1.
// `code` is a stable machine-readable identifier, e.g. "divisor-chain".
class InputError : public std::runtime_error {
public:
    InputError(std::string code, const std::string& message)
        : std::runtime_error(code + ": " + message), code_(std::move(code)) {}

    const std::string& code() const { return code_; }

private:
    std::string code_;
};

// A verified postcondition failed.  This indicates a bug, never bad input.
// The CLI maps this to exit code 2.
class VerifyError : public std::logic_error {
public:
    explicit VerifyError(const std::string& message)
        : std::logic_error("verification failed: " + message) {}
};

}  // namespace symplat
