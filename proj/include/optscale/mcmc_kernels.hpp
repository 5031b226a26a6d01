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
 * Additive TMCMC and RWM transition kernels with the dimension-dependent
 * scale schedules, plus a deterministic seeded chain runner.
 *
 * TMCMC moves every coordinate by the same scaled positive variate with an
 * independent random sign per coordinate:
 *
 *   x -> (x_1 + b_1 s eps, ..., x_d + b_d s eps),  s = l / sqrt(d).
 *
 * RWM perturbs each coordinate by an independent symmetric variate with
 * s = l / (d ln d). Both accept with min{1, pi(x*)/pi(x)} (no Hastings
 * factor: the proposals are symmetric).
 *
 * Chains can walk the original coordinates (bounded targets reject moves
 * leaving the support) or the logit-transformed coordinates, whose target
 * is the induced density on the whole real line.
 */

#ifndef OPTSCALE_MCMC_KERNELS_HPP
#define OPTSCALE_MCMC_KERNELS_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "optscale/proposal_model.hpp"
#include "optscale/support_transform.hpp"
#include "optscale/target_model.hpp"

namespace optscale {

struct ScaleSchedule {
    enum class Kind { tmcmc_sqrt, rwm_dlogd };
    Kind kind = Kind::tmcmc_sqrt;
    double ell = 1.0;
    int d = 1;

    // l / sqrt(d) or l / (d ln d); the latter requires d >= 2.
    double resolve() const;
};

enum class Algorithm { tmcmc, rwm };
enum class ChainSpace { original, transformed };

// Aggregate; construct with all fields, e.g.
// KernelConfig{Algorithm::tmcmc, proposal, {component, d}, schedule, space}.
struct KernelConfig {
    Algorithm algorithm;
    ProposalFamily proposal;
    ProductTarget target;
    ScaleSchedule schedule;
    ChainSpace space = ChainSpace::original;

    void validate() const; // transformed space requires a bounded target
};

// Log target density in the chain's own space.
double log_target(const KernelConfig& cfg, const std::vector<double>& x);

// log pi(proposal) - log pi(current); -inf when the proposal is out of
// support, +inf when only the current point is (never happens from a valid
// chain state).
double log_accept_ratio(const KernelConfig& cfg,
                        const std::vector<double>& current,
                        const std::vector<double>& proposal);

// One kernel step. Consumes exactly one proposal variate and d signs
// (TMCMC) or d proposal variates (RWM), plus one untracked acceptance
// uniform.
std::pair<std::vector<double>, bool> tmcmc_step(const std::vector<double>& x,
                                                const KernelConfig& cfg,
                                                Rng& rng);
std::pair<std::vector<double>, bool> rwm_step(const std::vector<double>& x,
                                              const KernelConfig& cfg,
                                              Rng& rng);

struct ChainTrace {
    std::vector<std::vector<double>> states; // n+1 entries
    std::vector<bool> accepted;              // n entries
    std::uint64_t seed = 0;
    std::string config_summary;
};

// Initial state drawn from the stationary law (mapped through the logit
// for transformed-space chains), then n_iter kernel steps, all on one
// deterministic substream of the seed.
ChainTrace run_chain(const KernelConfig& cfg, std::uint64_t n_iter,
                     std::uint64_t seed);

struct RunSummary {
    std::uint64_t n_steps = 0;
    std::uint64_t n_accepted = 0;
    std::vector<double> final_state;
    DrawCounts counts;
};

// Streaming variant: obs.on_initial(state) once, then obs.on_step(state,
// accepted) after every transition. Used for runs too large to hold.
template <class Obs>
RunSummary run_chain_observe(const KernelConfig& cfg, std::uint64_t n_iter,
                             std::uint64_t seed, Obs&& obs) {
    cfg.validate();
    Rng rng = Rng::substream(seed, 0);
    std::vector<double> x = sample_stationary(cfg.target, rng);
    if (cfg.space == ChainSpace::transformed) {
        const LogitMap m = logit_map_for(cfg.target.component);
        for (auto& xi : x) {
            xi = m.forward(xi);
        }
    }
    obs.on_initial(x);
    RunSummary summary;
    summary.n_steps = n_iter;
    for (std::uint64_t k = 0; k < n_iter; ++k) {
        auto [next, acc] = cfg.algorithm == Algorithm::tmcmc
                               ? tmcmc_step(x, cfg, rng)
                               : rwm_step(x, cfg, rng);
        x = std::move(next);
        summary.n_accepted += acc ? 1 : 0;
        obs.on_step(x, acc);
    }
    summary.final_state = x;
    summary.counts = rng.counts;
    return summary;
}

} // namespace optscale

#endif
