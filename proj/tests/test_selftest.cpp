#include "doctest.h"

#include <sstream>

#include "schatten/selftest.hpp"

TEST_CASE("embedded corpus passes") {
    std::ostringstream log;
    CHECK(schatten::run_selftest(log) == 0);
    CHECK(schatten::selftest_cases().size() >= 50);
}
