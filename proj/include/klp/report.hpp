#pragma once

#include <string>
#include <utility>
#include <vector>

namespace klp {

/// One named identity per verification report row.
struct IdentityReport {
    std::vector<std::pair<std::string, bool>> checks;

    void add(std::string name, bool ok) { checks.emplace_back(std::move(name), ok); }
    bool all_hold() const {
        for (const auto& [name, ok] : checks)
            if (!ok) return false;
        return true;
    }
    std::string first_failure() const {
        for (const auto& [name, ok] : checks)
            if (!ok) return name;
        return {};
    }
};

} // namespace klp
