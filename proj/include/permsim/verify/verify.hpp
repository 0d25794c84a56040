#pragma once

#include <cstdint>
#include <string>
#include <vector>

/// Structural invariants and oracle cross-checks behind the `verify` command.
namespace permsim::verify {

struct CheckResult {
    std::string name;     ///< stable identifier, e.g. "blocks:global-y"
    int         n{};      ///< qubit count, 0 for checks that sweep n internally
    double      residual{};
    double      tolerance{};
    bool        passed{};
    std::string detail;   ///< diagnostic on failure or for non-numeric checks
};

/// Deliberate defects for checking that the suite catches them.
enum class Fault { None, GlobalYSignFlip };

struct VerifyOptions {
    std::vector<int> ns{2, 3, 4, 5, 6};
    int              threads{1};
    std::uint64_t    seed{20240611};
    Fault            fault{Fault::None};
};

struct VerifyReport {
    std::vector<CheckResult> checks;
    [[nodiscard]] bool passed() const;
    [[nodiscard]] std::size_t failures() const;
};

/// Runs every check for every n in options.ns (each must lie in 1..8). Checks
/// never throw: exceptions are recorded as failures.
VerifyReport run_verify(const VerifyOptions &options);

} // namespace permsim::verify
