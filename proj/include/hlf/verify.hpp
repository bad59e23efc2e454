#pragma once

#include <functional>
#include <string>
#include <vector>

#include "hlf/oracle.hpp"
#include "hlf/repr.hpp"

namespace hlf {

struct VerifyOptions {
    std::uint64_t seed = 1;
    int cases = 0; // 0 = suite default
    bool parallel = false;
    rcode_t budget = MatEnumerator::kDefaultBudget;
};

struct PropertyResult {
    std::string suite;
    bool pass = false;
    int cases_run = 0;
    std::string detail; // counterexample serialization on failure
};

std::vector<std::string> verify_suite_names();

// Runs one named property suite; throws UnknownSuite for unknown names.
PropertyResult run_verify(const std::string& suite, const VerifyOptions& opt = {});

} // namespace hlf
