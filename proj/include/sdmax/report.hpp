#pragma once

#include <string>
#include <utility>
#include <vector>

namespace sdmax {

enum class ToleranceKind { Absolute, Relative };

struct CheckResult {
    std::string suite;
    std::string name;
    double computed;
    double expected;
    double tolerance;
    ToleranceKind kind;
    bool passed;

    double deviation() const;  // |computed - expected|, relative when kind says so
};

CheckResult make_check(std::string suite, std::string name, double computed, double expected,
                       double tolerance, ToleranceKind kind);

/// Flat check list plus context rows (units, seed, ...). No timestamps, no
/// hostnames: the same run must serialize to the same bytes.
struct VerificationReport {
    std::vector<std::pair<std::string, std::string>> context;
    std::vector<CheckResult> checks;

    bool all_passed() const;
    std::size_t failure_count() const;
    std::string to_csv() const;
    std::string to_json() const;
    /// One human line per check: "PASS|FAIL suite/name computed=... expected=... tol=..."
    std::string to_lines() const;
};

}  // namespace sdmax
