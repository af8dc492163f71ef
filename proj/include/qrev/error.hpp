#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qrev {

enum class ErrorCode {
    Shape,
    Domain,
    NotPsd,
    ZeroProbability,
    DegenerateMeasurement,
    NotReversible,
    Parameter,
    Index,
    Infeasible,
};

/// Stable, kebab-case name used in CLI error objects.
std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace qrev
