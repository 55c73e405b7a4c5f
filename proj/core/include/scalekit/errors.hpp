#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace scalekit {

/// Base class for all library errors. Each error carries a stable machine
/// readable kind string (used by the CLI to emit structured error objects)
/// plus a human readable message.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& message)
        : std::runtime_error(message), kind_(std::move(kind)) {}

    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

struct DomainError : Error {
    explicit DomainError(const std::string& msg) : Error("DomainError", msg) {}
};

struct DegenerateInput : Error {
    explicit DegenerateInput(const std::string& msg) : Error("DegenerateInput", msg) {}
};

struct DivergentIntegral : Error {
    explicit DivergentIntegral(const std::string& msg) : Error("DivergentIntegral", msg) {}
};

struct NoBracket : Error {
    explicit NoBracket(const std::string& msg) : Error("NoBracket", msg) {}
};

struct InfeasibleConstraint : Error {
    explicit InfeasibleConstraint(const std::string& msg) : Error("InfeasibleConstraint", msg) {}
};

struct NonMonotoneMap : Error {
    explicit NonMonotoneMap(const std::string& msg) : Error("NonMonotoneMap", msg) {}
};

struct GridTooNarrow : Error {
    explicit GridTooNarrow(const std::string& msg) : Error("GridTooNarrow", msg) {}
};

struct RingingExceedsTolerance : Error {
    explicit RingingExceedsTolerance(const std::string& msg)
        : Error("RingingExceedsTolerance", msg) {}
};

struct UnknownDistribution : Error {
    explicit UnknownDistribution(const std::string& msg) : Error("UnknownDistribution", msg) {}
};

struct ParameterOutOfDomain : Error {
    explicit ParameterOutOfDomain(const std::string& msg) : Error("ParameterOutOfDomain", msg) {}
};

struct UnknownScenario : Error {
    explicit UnknownScenario(const std::string& msg) : Error("UnknownScenario", msg) {}
};

struct InvalidSpec : Error {
    explicit InvalidSpec(const std::string& msg) : Error("InvalidSpec", msg) {}
};

struct UsageError : Error {
    explicit UsageError(const std::string& msg) : Error("UsageError", msg) {}
};

}  // namespace scalekit
