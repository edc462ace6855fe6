#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ersa/oracle.hpp"

namespace ersa {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct CorpusEntry {
    std::string name;
    OracleInstance instance;
    Params params;
};

// Fixed corpus of small instances (at most 6 octagons) for the exact
// oracle cross-checks.
std::vector<CorpusEntry> oracle_corpus();

// Each function covers one acceptance-style criterion; `fast` shrinks
// trial budgets for use in quick unit runs.
std::vector<CheckResult> verify_selfdual(uint64_t seed, bool fast = false);
std::vector<CheckResult> verify_duality(uint64_t seed, bool fast = false);
std::vector<CheckResult> verify_oracle_mc(uint64_t seed, bool fast = false);
std::vector<CheckResult> verify_mr(uint64_t seed, bool fast = false);
std::vector<CheckResult> verify_coupling(uint64_t seed, bool fast = false);
std::vector<CheckResult> verify_bisect(uint64_t seed, bool fast = false);
std::vector<CheckResult> verify_affects(uint64_t seed, bool fast = false);
std::vector<CheckResult> verify_fourier();
std::vector<CheckResult> verify_torus(uint64_t seed, bool fast = false);

// Named suite dispatch for the command line: "selfdual", "duality",
// "oracle", "mr", "coupling", "bisect", "affects", "fourier", "torus",
// or "all" (everything except the slow bisect suite unless asked).
std::vector<CheckResult> run_suite(const std::string& suite, uint64_t seed, bool fast = false);

bool all_passed(const std::vector<CheckResult>& results);

}  // namespace ersa
