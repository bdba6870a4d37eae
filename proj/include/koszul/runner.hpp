#pragma once
// Batch front end: problem files in, tables and verification reports out.

#include <optional>
#include <string>

#include "koszul/verify.hpp"

namespace koszul {

struct RunOptions {
    std::string command;            // check | cohomology | dual | resolve | intersect | verify | hilbert
    std::string input_path;         // problem file (optional for verify)
    std::string module_name;        // --module
    std::string suite = "all";      // --suite
    std::string format = "table";   // table | json | csv
    std::optional<Window> window;   // --window jmin:jmax override
    std::uint64_t seed = 42;        // --seed
    int threads = 0;                // 0 = use KOSZUL_LAB_THREADS
};

/// executes one command; prints results to `out`; returns the process exit
/// code (0 = all requested checks passed)
int run_command(const RunOptions& opt, std::ostream& out);

/// parse + full validation; throws ParseError on the first violation
json parse_problem_file(const std::string& path);
json parse_problem_json(const json& j);

}  // namespace koszul
