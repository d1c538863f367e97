#include "gmr/report.hpp"

#include <algorithm>

namespace gmr {

void Report::fail(std::string check, std::vector<std::string> witness, std::string detail) {
    violations_.push_back({std::move(check), std::move(witness), std::move(detail)});
}

void Report::block(std::string check, std::string reason) {
    blocked_.emplace_back(std::move(check), std::move(reason));
}

void Report::merge(const Report& other) {
    violations_.insert(violations_.end(), other.violations_.begin(), other.violations_.end());
    blocked_.insert(blocked_.end(), other.blocked_.begin(), other.blocked_.end());
}

bool Report::has_failure(const std::string& check) const {
    return std::any_of(violations_.begin(), violations_.end(),
                       [&](const Violation& v) { return v.check == check; });
}

bool Report::is_blocked(const std::string& check) const {
    return std::any_of(blocked_.begin(), blocked_.end(),
                       [&](const auto& b) { return b.first == check; });
}

std::set<std::string> Report::failed_checks() const {
    std::set<std::string> out;
    for (const auto& v : violations_) out.insert(v.check);
    return out;
}

std::vector<std::string> Report::lines() const {
    std::vector<std::string> out;
    for (const auto& v : violations_) {
        std::string line = "FAIL " + v.check;
        for (const auto& w : v.witness) line += " " + w;
        if (!v.detail.empty()) line += " (" + v.detail + ")";
        out.push_back(std::move(line));
    }
    for (const auto& [check, reason] : blocked_) {
        out.push_back("BLOCKED " + check + " (" + reason + ")");
    }
    return out;
}

}  // namespace gmr
