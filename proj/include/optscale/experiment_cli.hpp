/*################################################################################
  ##
  ##   Copyright (C) 2024-2026 the optscale authors
  ##
  ##   This file is part of the optscale library.
  ##
  ##   Licensed under the Apache License, Version 2.0 (the "License");
  ##   you may not use this file except in compliance with the License.
  ##   You may obtain a copy of the License at
  ##
  ##       http://www.apache.org/licenses/LICENSE-2.0
  ##
  ##   Unless required by applicable law or agreed to in writing, software
  ##   distributed under the License is distributed on an "AS IS" BASIS,
  ##   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
  ##   See the License for the specific language governing permissions and
  ##   limitations under the License.
  ##
  ################################################################################*/

/*
 * The optscale command-line surface: scaling-table generation, the
 * TMCMC-vs-RWM comparison experiment, and single-chain sampling to a binary
 * trace. The cmd_* functions are plain functions over option structs so they
 * are scriptable and testable without argv plumbing; run_cli wires them to
 * flags and an optional flat key=value config file (flags win).
 *
 * OPTSCALE_THREADS caps worker concurrency for the multi-cell and
 * multi-chain commands.
 */

#ifndef OPTSCALE_EXPERIMENT_CLI_HPP
#define OPTSCALE_EXPERIMENT_CLI_HPP

#include <cstdint>
#include <string>

namespace optscale::cli {

struct Table1Options {
    std::string out;
};

struct CompareOptions {
    int d = 10;
    std::uint64_t iters = 100000;
    std::uint64_t seed = 42;
    double tmcmc_ell = 2.934;
    double rwm_ell = 1.6;
    int max_lag = 50;
    std::string out_prefix;
};

struct SampleOptions {
    std::string algorithm = "tmcmc";
    std::string proposal = "cauchy";
    std::string target = "truncnormal(0,1,-1,1)";
    int d = 10;
    std::uint64_t iters = 100000;
    std::uint64_t seed = 0;
    double ell = 0.0; // 0 means "compute the optimal scale for this pair"
    std::string schedule; // empty means "the algorithm's own schedule"
    std::string space = "original";
    std::string out;
};

// Writes the 6x2 grid of scaling results as CSV and a 3-decimal summary to
// stdout. Returns the process exit code.
int cmd_table1(const Table1Options& opt);

// Runs TMCMC (l/sqrt(d)) and RWM (l/(d ln d)) with the Cauchy proposal on
// truncnormal(0,1,-1,1), writing <prefix>_summary.csv and <prefix>_acf.csv.
int cmd_compare(const CompareOptions& opt);

// Runs one chain and writes the binary trace plus a JSON metadata sidecar
// at <out>.json.
int cmd_sample(const SampleOptions& opt);

// Worker cap: OPTSCALE_THREADS when set and valid, else
// hardware_concurrency, never below 1.
int thread_cap();

int run_cli(int argc, char** argv);

} // namespace optscale::cli

#endif
