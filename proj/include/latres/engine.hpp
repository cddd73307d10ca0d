// Job orchestration behind the command-line surface: one JobConfig in, one
// rendered report out.  All of the pipeline (certify, Koszul, Betti, forest,
// primes, paths, resolve, descend, verify) is reachable from here, and
// identical configs produce byte-identical output.
#pragma once

#include "latres/descent.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace latres {

struct JobConfig {
    std::string command;     // lattice koszul betti forest primes paths resolve descend verify
    std::string input_json;  // file contents, not a path
    std::string field = "q";
    std::optional<Int> bound;        // verify: exactness horizon
    std::optional<Int> radius_cap;   // support deepening cap multiplier
    std::string mode = "canonical-basis";  // or "community"
    std::uint64_t seed = 0;
    std::size_t jobs = 1;
    std::string format = "json";  // or "text"
    std::vector<Vec> degrees;     // explicit degree window (koszul, forest, primes)
};

// status: 0 success, 1 verification failure or uncertified output,
// 2 invalid input, 3 internal error
struct JobResult {
    int status = 0;
    std::string output;
    std::string error;
};

JobResult run_job(const JobConfig& cfg);

}  // namespace latres
