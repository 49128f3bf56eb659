#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace primelab {

/// Base of every error the library raises. `code()` is a short stable token
/// suitable for machine-readable reporting (`ERROR <code>: <message>`).
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}

    [[nodiscard]] const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

class DomainError : public Error {
public:
    explicit DomainError(const std::string& message) : Error("domain", message) {}
};

class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& message) : Error("validation", message) {}
};

class BudgetExceeded : public Error {
public:
    BudgetExceeded(const std::string& message, unsigned long long budget)
        : Error("budget_exceeded", message), budget_(budget) {}

    [[nodiscard]] unsigned long long budget() const noexcept { return budget_; }

private:
    unsigned long long budget_;
};

/// Requested tolerance is below what working precision can deliver.
class PrecisionError : public Error {
public:
    PrecisionError(const std::string& message, double best_bound)
        : Error("precision", message), best_bound_(best_bound) {}

    [[nodiscard]] double best_bound() const noexcept { return best_bound_; }

private:
    double best_bound_;
};

class IoError : public Error {
public:
    explicit IoError(const std::string& message) : Error("io", message) {}
};

}  // namespace primelab
