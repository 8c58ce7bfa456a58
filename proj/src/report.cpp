#include "sdmax/report.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "sdmax/io.hpp"

namespace sdmax {

double CheckResult::deviation() const {
    const double diff = std::abs(computed - expected);
    if (kind == ToleranceKind::Absolute) return diff;
    return expected == 0.0 ? (diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity())
                           : diff / std::abs(expected);
}

CheckResult make_check(std::string suite, std::string name, double computed, double expected,
                       double tolerance, ToleranceKind kind) {
    CheckResult c{std::move(suite), std::move(name), computed, expected, tolerance, kind, false};
    c.passed = std::isfinite(computed) && c.deviation() <= tolerance;
    return c;
}

bool VerificationReport::all_passed() const {
    for (const auto& c : checks)
        if (!c.passed) return false;
    return !checks.empty();
}

std::size_t VerificationReport::failure_count() const {
    std::size_t n = 0;
    for (const auto& c : checks)
        if (!c.passed) ++n;
    return n;
}

std::string VerificationReport::to_csv() const {
    std::ostringstream out;
    for (const auto& [key, value] : context) out << "# " << key << " = " << value << "\n";
    out << "suite,check,computed,expected,tolerance,tolerance_kind,passed\n";
    for (const auto& c : checks) {
        out << c.suite << ',' << c.name << ',' << format_g17(c.computed) << ','
            << format_g17(c.expected) << ',' << format_g17(c.tolerance) << ','
            << (c.kind == ToleranceKind::Absolute ? "absolute" : "relative") << ','
            << (c.passed ? "true" : "false") << "\n";
    }
    return out.str();
}

std::string VerificationReport::to_json() const {
    nlohmann::ordered_json j;
    j["context"] = nlohmann::ordered_json::object();
    for (const auto& [key, value] : context) j["context"][key] = value;
    j["checks"] = nlohmann::ordered_json::array();
    for (const auto& c : checks) {
        nlohmann::ordered_json jc;
        jc["suite"] = c.suite;
        jc["check"] = c.name;
        jc["computed"] = c.computed;
        jc["expected"] = c.expected;
        jc["tolerance"] = c.tolerance;
        jc["tolerance_kind"] = c.kind == ToleranceKind::Absolute ? "absolute" : "relative";
        jc["passed"] = c.passed;
        j["checks"].push_back(std::move(jc));
    }
    j["all_passed"] = all_passed();
    return j.dump(2) + "\n";
}

std::string VerificationReport::to_lines() const {
    std::ostringstream out;
    for (const auto& c : checks) {
        out << (c.passed ? "PASS" : "FAIL") << ' ' << c.suite << '/' << c.name
            << " computed=" << format_g17(c.computed) << " expected=" << format_g17(c.expected)
            << " tol=" << format_g17(c.tolerance)
            << (c.kind == ToleranceKind::Relative ? " (relative)" : "") << "\n";
    }
    return out.str();
}

}  // namespace sdmax
