#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace kecalc {

/**
 * Failure taxonomy shared by every module.  Each error carries a stable
 * machine-readable code ("InvalidQuotient", "MaxIterExceeded", ...) next to
 * the human message.  validation_error means the input was bad and maps to
 * CLI exit code 1; numerical_error means a solver or quadrature gave up and
 * maps to exit code 2.
 */
class calc_error : public std::runtime_error {
public:
    calc_error(std::string code, const std::string& what)
        : std::runtime_error(code + ": " + what), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

class validation_error : public calc_error {
public:
    using calc_error::calc_error;
};

class numerical_error : public calc_error {
public:
    using calc_error::calc_error;
};

} // namespace kecalc
