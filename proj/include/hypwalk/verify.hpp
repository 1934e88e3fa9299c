#pragma once

#include "hypwalk/geometry.hpp"

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace hypwalk {

enum class VerifyLevel { Quick, Full };

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail; // counterexample or summary
    double ms = 0.0;
};

struct VerifyReport {
    std::vector<CheckResult> checks;

    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

/// Dependency-injection points for fault testing: the suites must catch a
/// deliberately broken predicate and name a concrete counterexample.
struct VerifyHooks {
    std::function<bool(const ModelSpace&, const Shadow&, const ModelPoint&)> shadow_member;
};

/// Runs every module invariant suite. Quick exhausts oracles to radius 5
/// with 10^3-trial Monte-Carlo; Full goes to radius 8 and 10^5 trials.
VerifyReport run_verify(VerifyLevel level, std::ostream* progress = nullptr);
VerifyReport run_verify(VerifyLevel level, const VerifyHooks& hooks,
                        std::ostream* progress = nullptr);

} // namespace hypwalk
