#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace schatten {

struct SelftestCase {
    std::string name;
    std::function<bool()> check;
};

/// Closed-form examples for every module plus an eigensolver residual suite.
const std::vector<SelftestCase>& selftest_cases();

/// Runs every case, printing one PASS/FAIL line each. Returns the failure count.
int run_selftest(std::ostream& out);

} // namespace schatten
