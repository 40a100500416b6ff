#pragma once

#include <vector>

#include "cellcheck/value.hpp"
#include "cellcheck/workbook.hpp"

namespace cellcheck::testing {

struct SemanticsCase {
    const char* formula;
    Value expected;
};

/// Sheet "S" shared by every case:
///   A1 92, A2 56, A3 95, A4 blank, A5 "x", A6 TRUE, A7 -2.5, A8 0,
///   B1 =1/0, B2 =B2 (cycle), B3 =Missing!A1, B4 =A5+1.
/// Each case formula is placed in E1 and evaluated with the whole workbook.
Workbook semantics_workbook(const char* formula);

/// Hand-computed expectations; numbers are exact decimal results.
const std::vector<SemanticsCase>& semantics_cases();

}  // namespace cellcheck::testing
