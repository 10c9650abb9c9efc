#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pht::verify {

struct Check {
    std::string name;
    double residual = 0.0;
    double limit = 0.0;
    bool passed = false;
    std::string note;
};

struct Criterion {
    int id = 0;
    std::string title;
    std::vector<Check> checks;

    bool passed() const;
    double worst_ratio() const;  // max residual / limit over the checks
};

inline constexpr int kCriterionCount = 12;

/// Runs one acceptance criterion (1-based). Exceptions become failed checks.
Criterion run_criterion(int id);

std::vector<Criterion> run_suite();

/// One PASS/FAIL line per criterion; with `details`, every check is listed beneath it.
void print_report(std::ostream& os, const std::vector<Criterion>& results, bool details);

}  // namespace pht::verify
