#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "forestsos/multigraph.hpp"
#include "forestsos/polynomial.hpp"

namespace forestsos {

enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitParse = 2, kExitVerify = 3, kExitBudget = 4 };

struct CommandResult {
    int code = kExitOk;
    std::string out;
    std::string err;
};

/// Runs the command line `args` (without the program name) and captures
/// what would be printed.
CommandResult run_command(const std::vector<std::string>& args);

/// K_{3,3} with parts {0,1,2} and {3,4,5}; edge xij joins i and 3+j.
MultiGraph k33();

struct K33Orbit {
    std::string name;
    EdgeId e, f;
    Polynomial delta_i;
    Polynomial delta_b;
    std::size_t negative_terms = 0;  ///< in delta_i - delta_b
    Rational delta_i_at_ones;
    Rational delta_b_at_ones;
    Rational delta_i_minimum;  ///< over all-ones and the random points
    std::size_t samples = 0;
};

/// Both edge-pair orbits of K_{3,3}: adjacent (x00, x01) and disjoint
/// (x00, x11). Delta I uses the forest polynomial, Delta B the spanning-tree
/// polynomial.
std::vector<K33Orbit> k33_report(std::size_t trials, std::uint64_t seed);

struct SurveyOptions {
    std::size_t count = 100;
    std::size_t max_steps = 6;
    std::size_t max_minors = 2;
    std::size_t trials = 5;
    std::uint64_t seed = 7;
    /// Directory that receives graph files of failing recipes; empty to skip.
    std::string dump_dir;
};

struct SurveyResult {
    std::size_t recipes = 0;
    std::size_t verified = 0;
    std::size_t nonnegative = 0;
    std::string report;
};

/// Random series-parallel recipes: construct and verify every certificate,
/// sample every Rayleigh difference.
SurveyResult run_survey(const SurveyOptions& opts);

}  // namespace forestsos
