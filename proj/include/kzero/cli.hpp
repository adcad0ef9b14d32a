#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

namespace kzero::cli {

struct RunConfig {
    std::string command;     // setup | test | search | table | bench
    int p = 2;
    int n = 0;
    std::string element;     // hex for p = 2, trit string for p = 3
    std::string ctx_path;    // optional context file (alternative to p/n)
    std::uint64_t seed = 0;
    int workers = 1;
    std::uint64_t max_trials = 1000000;
    int n_max = 0;
    std::string format = "csv";
    std::string output_path; // empty = stdout
    std::int64_t samples = 10000;
};

// Executes one command. Exit codes: 0 success (ZERO / found / written),
// 1 NONZERO or search exhaustion, 2 any error (parse, I/O, domain).
// All output is deterministic for fixed inputs except lines prefixed
// "timing ".
int run(const RunConfig &cfg, std::ostream &out, std::ostream &err);

} // namespace kzero::cli
