#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ergent/cli/csv.hpp"

namespace ergent::cli {

struct CommandOutput {
    int exit_code = 0;
    std::string csv;
    std::string summary;     // one line for stderr, may be empty
    std::string side_file;   // extra payload (e.g. a dumped ensemble)
};

struct MeasureOptions {
    std::string state_path;
    std::string subset;
    std::string ham = "equispaced:1";
    std::string kinds;  // empty: every kind valid for the subset
    bool normalize = false;
};
CommandOutput cmd_measure(const MeasureOptions& o, RunManifest m);

struct ReproOptions {
    std::string target;
    int grid = 0;     // 0: target default
    int n_max = 8;
    int samples = 20;
    std::uint64_t seed = 0;
};
CommandOutput cmd_repro(const ReproOptions& o, RunManifest m);

struct VerifyOptions {
    std::string suite;
    int trials = 0;  // 0: suite default
    std::uint64_t seed = 0;
};
CommandOutput cmd_verify(const VerifyOptions& o, RunManifest m);

struct RoofOptions {
    std::string mixture_path;
    std::string subset;
    std::string ham = "equispaced:1";
    std::string kind = "ME";
    int restarts = 64;
    int ensemble_size = 0;
    int max_iters = 400;
    std::uint64_t seed = 0;
    bool normalize = false;
    bool dump_ensemble = false;
};
CommandOutput cmd_roof(const RoofOptions& o, RunManifest m);

// Verification suites, shared with the acceptance tests.

struct Violation {
    std::uint64_t trial = 0;
    std::string check;
    double lhs = 0.0;
    double rhs = 0.0;
    std::string detail;
};

struct SuiteResult {
    std::string suite;
    std::uint64_t trials = 0;
    std::uint64_t checks = 0;
    std::vector<Violation> violations;
};

const std::vector<std::string>& suite_names();
int default_trials(const std::string& suite);
SuiteResult run_suite(const std::string& suite, std::uint64_t trials, std::uint64_t seed);

}  // namespace ergent::cli
