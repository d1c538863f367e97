#pragma once

#include <set>
#include <string>
#include <vector>

namespace gmr {

/// One failed fact. `check` is a stable, greppable id such as
/// `adjacent-arcs`; `witness` lists the offending items.
struct Violation {
    std::string check;
    std::vector<std::string> witness;
    std::string detail;

    friend bool operator==(const Violation&, const Violation&) = default;
};

/// Result of a static check. Reports are exhaustive: every violation found
/// is listed, in a deterministic order.
class Report {
public:
    void fail(std::string check, std::vector<std::string> witness, std::string detail = {});
    /// Records that `check` could not run because a prerequisite failed.
    void block(std::string check, std::string reason);
    void merge(const Report& other);

    bool passed() const { return violations_.empty() && blocked_.empty(); }
    bool has_failure(const std::string& check) const;
    bool is_blocked(const std::string& check) const;
    /// Names of checks with at least one violation.
    std::set<std::string> failed_checks() const;

    const std::vector<Violation>& violations() const { return violations_; }

    /// `FAIL <check> <witness...> [(detail)]` and `BLOCKED <check> (<reason>)`.
    std::vector<std::string> lines() const;

private:
    std::vector<Violation> violations_;
    std::vector<std::pair<std::string, std::string>> blocked_;
};

}  // namespace gmr
