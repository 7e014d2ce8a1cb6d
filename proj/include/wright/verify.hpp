#pragma once

#include <string>
#include <vector>

#include "wright/precision.hpp"

namespace wright {

// One verification item (a criterion of the acceptance suite, or one row of
// the error-table reproduction).
struct CriterionResult {
    int id = 0;
    std::string name;
    std::string expected;
    std::string actual;
    std::string tolerance;
    bool pass = false;
    double seconds = 0.0;
};

// Reproduction of the x=25 relative-error table: three parameter columns,
// truncation index j = 0..4, against the published values.
struct Table1Entry {
    int column = 0;
    int j = 0;
    double printed = 0.0;
    double measured = 0.0;   // best over the scanned m and its +-1 neighbours
    long m_used = 0;
    double deviation = 0.0;  // |measured - printed| / printed
    bool pass = false;
};

std::vector<Table1Entry> table1_compute(long digits);

// Runs the full verification suite at the given precision. `only` filters by
// short key: table2, eq45, table1, polynomial, gcoeffs, closedforms, oracle,
// multiplier, halfint (empty string = run all).
std::vector<CriterionResult> run_acceptance(long digits, const std::string& only = "");

}  // namespace wright
