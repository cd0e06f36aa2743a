#pragma once

#include <stdexcept>
#include <string>

namespace pa {

// Mathematical failure with a stable error code (CLI exit 3).
class MathError : public std::runtime_error {
public:
    explicit MathError(std::string code, const std::string& detail = "")
        : std::runtime_error(detail.empty() ? code : code + ": " + detail),
          code_(std::move(code)) {}
    const std::string& code() const { return code_; }

private:
    std::string code_;
};

// Malformed input (CLI exit 2).
class SchemaError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

[[noreturn]] inline void fail(const std::string& code, const std::string& detail = "")
{
    throw MathError(code, detail);
}

}  // namespace pa
