#pragma once

// The five-variable single-category walkthrough used as a golden fixture:
// runs the real trainer on the row (3, 8, 5, 10, 2) with target output 4
// and checks every intermediate value exactly.

#include <string>

namespace oscerr {

struct TraceResult {
    std::string text;
    bool matches_expected = false;
};

TraceResult run_demo_trace();

}  // namespace oscerr
