#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace kbiframe {

enum class ErrorKind {
    NotHermitian,
    NoConvergence,
    DimensionMismatch,
    NonHermitianForm,
    DegenerateK,
    TrivialSubspace,
    InnerInverseViolated,
    NotAKBiframe,
    NotUnitary,
    NotEP,
    HypothesisViolated,
    GenerationFailed,
    InvalidArgument,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Library-wide exception. Some kinds carry a numeric value (defect, margin)
/// and a witness vector that demonstrates the failure.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    Error(ErrorKind kind, const std::string& message, double value,
          std::vector<std::complex<double>> witness)
        : std::runtime_error(message), kind_(kind), value_(value), witness_(std::move(witness)) {}

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }
    [[nodiscard]] double value() const noexcept { return value_; }
    [[nodiscard]] const std::vector<std::complex<double>>& witness() const noexcept { return witness_; }

private:
    ErrorKind kind_;
    double value_ = 0.0;
    std::vector<std::complex<double>> witness_;
};

} // namespace kbiframe
