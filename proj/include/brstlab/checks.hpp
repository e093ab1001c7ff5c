#pragma once

#include <string>
#include <utility>
#include <vector>

namespace brstlab {

struct CheckResult {
    std::string name;
    bool pass = true;
    std::string detail;
};

// Folds instance results into one named result; the detail keeps the first few failures.
inline CheckResult summarize(std::string name, const std::vector<CheckResult>& instances) {
    CheckResult out{std::move(name), true, ""};
    std::size_t failed = 0;
    std::string failures;
    for (const auto& r : instances) {
        if (r.pass) continue;
        if (failed < 3) failures += (failures.empty() ? "" : "; ") + r.name + ": " + r.detail;
        ++failed;
    }
    if (failed == 0) {
        out.detail = std::to_string(instances.size()) + " instances pass";
    } else {
        out.pass = false;
        out.detail = std::to_string(failed) + " of " + std::to_string(instances.size()) + " fail; " + failures;
    }
    return out;
}

inline bool all_pass(const std::vector<CheckResult>& rs) {
    for (const auto& r : rs)
        if (!r.pass) return false;
    return true;
}

inline CheckResult equality_check(std::string name, long long lhs, long long rhs) {
    return {std::move(name), lhs == rhs, std::to_string(lhs) + (lhs == rhs ? " == " : " != ") + std::to_string(rhs)};
}

}  // namespace brstlab
