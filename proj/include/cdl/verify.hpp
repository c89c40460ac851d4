#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cdl/error.hpp"

namespace cdl {

enum class CheckStatus { Pass, Fail, Skip, Info };
std::string to_string(CheckStatus s);

/// One re-derived value. `basis` says where the expected value comes from:
/// "formula" (a published closed form), "enumeration" (brute force against
/// an independent route) or "identity" (structural fact).
struct Check {
    std::string group;
    std::string name;
    std::string expected;
    std::string actual;
    std::string basis;
    CheckStatus status = CheckStatus::Pass;
    std::string detail;
};

struct VerifyOptions {
    unsigned max_n = 4;
    unsigned max_m = 3;
    /// Products are swept for m * n <= max_mn.
    unsigned max_mn = 9;
    std::vector<std::uint32_t> z_orders{2, 4};
    unsigned decompose_trials = 24;
    std::uint64_t seed = 20240611;
    Budget budget = default_budget();
};

struct VerifyReport {
    std::vector<Check> checks;
    VerifyOptions options;
    double seconds = 0.0;

    std::size_t count(CheckStatus s) const;
    bool passed() const { return count(CheckStatus::Fail) == 0; }
};

/// Re-derives every closed-form value by enumeration, plus decomposition
/// round trips and structural property sweeps.
VerifyReport run_verify(const VerifyOptions& options);

}  // namespace cdl
