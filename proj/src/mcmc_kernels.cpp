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

#include "optscale/mcmc_kernels.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace optscale {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

} // namespace

double ScaleSchedule::resolve() const {
    if (!(ell > 0.0)) {
        throw std::invalid_argument("scale_schedule: ell must be positive");
    }
    switch (kind) {
    case Kind::tmcmc_sqrt:
        if (d < 1) {
            throw std::invalid_argument("scale_schedule: d must be >= 1");
        }
        return ell / std::sqrt(static_cast<double>(d));
    case Kind::rwm_dlogd:
        if (d < 2) {
            throw std::invalid_argument(
                "scale_schedule: d >= 2 required, log d vanishes at d = 1");
        }
        return ell / (d * std::log(static_cast<double>(d)));
    }
    throw std::invalid_argument("scale_schedule: unknown kind");
}

void KernelConfig::validate() const {
    if (target.d < 1) {
        throw std::invalid_argument("kernel config: dimension must be >= 1");
    }
    if (schedule.d != target.d) {
        throw std::invalid_argument(
            "kernel config: schedule dimension disagrees with target");
    }
    if (space == ChainSpace::transformed &&
        target.component.support().kind != Support::Kind::interval) {
        throw std::invalid_argument(
            "kernel config: transformed space requires a bounded target");
    }
    (void)schedule.resolve();
}

double log_target(const KernelConfig& cfg, const std::vector<double>& x) {
    if (cfg.space == ChainSpace::original) {
        return log_density_joint(cfg.target, x);
    }
    const LogitMap m = logit_map_for(cfg.target.component);
    double sum = 0.0;
    for (const double yi : x) {
        sum += transformed_log_density(m, cfg.target.component, yi);
    }
    return sum;
}

double log_accept_ratio(const KernelConfig& cfg,
                        const std::vector<double>& current,
                        const std::vector<double>& proposal) {
    const double lp = log_target(cfg, proposal);
    if (lp == kNegInf) {
        return kNegInf;
    }
    return lp - log_target(cfg, current);
}

namespace {

// Shared Metropolis tail: one acceptance uniform is always consumed so a
// step has a fixed stream length regardless of the decision path.
std::pair<std::vector<double>, bool> decide(const KernelConfig& cfg,
                                            const std::vector<double>& x,
                                            std::vector<double>&& proposal,
                                            Rng& rng) {
    const double log_ratio = log_accept_ratio(cfg, x, proposal);
    const double u = rng.uniform();
    if (std::log(u) < log_ratio) {
        return {std::move(proposal), true};
    }
    return {x, false};
}

} // namespace

std::pair<std::vector<double>, bool> tmcmc_step(const std::vector<double>& x,
                                                const KernelConfig& cfg,
                                                Rng& rng) {
    const double scale = cfg.schedule.resolve();
    const double eps = cfg.proposal.sample_positive(rng);
    std::vector<double> proposal(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        proposal[i] = x[i] + rng.sign() * scale * eps;
    }
    return decide(cfg, x, std::move(proposal), rng);
}

std::pair<std::vector<double>, bool> rwm_step(const std::vector<double>& x,
                                              const KernelConfig& cfg,
                                              Rng& rng) {
    const double scale = cfg.schedule.resolve();
    std::vector<double> proposal(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        proposal[i] = x[i] + scale * cfg.proposal.sample_symmetric(rng);
    }
    return decide(cfg, x, std::move(proposal), rng);
}

namespace {

std::string summarize(const KernelConfig& cfg) {
    std::ostringstream os;
    os << (cfg.algorithm == Algorithm::tmcmc ? "tmcmc" : "rwm") << " "
       << cfg.proposal.name() << " " << cfg.target.component.name() << " d="
       << cfg.target.d << " ell=" << cfg.schedule.ell
       << " scale=" << cfg.schedule.resolve() << " space="
       << (cfg.space == ChainSpace::original ? "original" : "transformed");
    return os.str();
}

struct TraceCollector {
    ChainTrace& trace;
    void on_initial(const std::vector<double>& x) {
        trace.states.push_back(x);
    }
    void on_step(const std::vector<double>& x, bool accepted) {
        trace.states.push_back(x);
        trace.accepted.push_back(accepted);
    }
};

} // namespace

ChainTrace run_chain(const KernelConfig& cfg, std::uint64_t n_iter,
                     std::uint64_t seed) {
    ChainTrace trace;
    trace.seed = seed;
    trace.config_summary = summarize(cfg);
    trace.states.reserve(n_iter + 1);
    trace.accepted.reserve(n_iter);
    run_chain_observe(cfg, n_iter, seed, TraceCollector{trace});
    return trace;
}

} // namespace optscale
