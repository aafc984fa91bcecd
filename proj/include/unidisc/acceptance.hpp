#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace unidisc {

struct CriterionResult {
    int id;
    std::string name;
    bool pass;
    std::string detail;
};

/// Run acceptance criteria 1-10 (the determinism criterion is driven from the
/// acceptance binary, which invokes the CLI twice and compares bytes).  All
/// random draws come from SplitMix64 streams derived from seed, so equal seeds
/// give identical results and identical detail strings.
std::vector<CriterionResult> run_acceptance(uint64_t seed);

/// one line per criterion: "[ k] PASS <name>: <detail>"
void print_results(const std::vector<CriterionResult>& results, std::ostream& out);

bool all_pass(const std::vector<CriterionResult>& results);

}  // namespace unidisc
