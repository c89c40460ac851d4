#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace cdl {

/// Bad arguments: wrong group order, mismatched descriptors, malformed input.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An enumeration would exceed the configured element budget.
class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when a table is not recognised as a central product of CD loops.
class DecompositionError : public std::runtime_error {
public:
    DecompositionError(const std::string& what, std::int64_t element = -1)
        : std::runtime_error(what), element_(element) {}

    /// Offending element index, or -1 when no single element is to blame.
    std::int64_t element() const noexcept { return element_; }

private:
    std::int64_t element_;
};

/// Upper bound on the number of elements any enumeration may touch.
struct Budget {
    static constexpr std::uint64_t kDefaultMaxElements = std::uint64_t{1} << 20;

    std::uint64_t max_elements = kDefaultMaxElements;

    /// Throws BudgetExceeded when `count` elements would not fit.
    void require(std::uint64_t count, const std::string& what) const;
};

/// Default budget, honouring the CDL_MAX_ELEMENTS environment variable.
Budget default_budget();

}  // namespace cdl
