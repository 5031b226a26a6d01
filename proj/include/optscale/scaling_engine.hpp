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
 * Diffusion-speed machinery: the proposal-only speed
 *
 *   g*(l) = 4 l^2 int_0^inf u^2 Phi(-u l / 2) q(u) du,
 *
 * its Fisher-adjusted form g(l; I) = g*(l sqrt I)/I, the acceptance-rate
 * curve alpha(l; I) = 4 int_0^inf Phi(-u l sqrt(I) / 2) q(u) du, the
 * maximizer l*, and the optimal scale l_opt = l* / sqrt(I) with the associated
 * optimal acceptance rate (which is target-free).
 */

#ifndef OPTSCALE_SCALING_ENGINE_HPP
#define OPTSCALE_SCALING_ENGINE_HPP

#include <optional>
#include <string>
#include <vector>

#include "optscale/proposal_model.hpp"
#include "optscale/support_transform.hpp"
#include "optscale/target_model.hpp"

namespace optscale {

// Proposal-only diffusion speed; absolute quadrature tolerance 1e-10.
double g_star(double ell, const ProposalFamily& p);

// Fisher-adjusted diffusion speed g(l; I).
double g_speed(double ell, const ProposalFamily& p, double fisher);

// Acceptance-rate curve; equals 1 in the l -> 0 limit under the symmetric-q
// normalization.
double acceptance_curve(double ell, const ProposalFamily& p, double fisher);

// Maximizer of g_star over (0, 100]: doubling bracket from l = 0.1, then
// golden-section to width 1e-6, with a 50-point unimodality sweep
// (increasing before the bracket, decreasing after). Throws std::runtime_error
// when no interior maximum is found or the sweep detects non-unimodality.
double optimize_ell_star(const ProposalFamily& p);

struct ScalingResult {
    double ell_star = 0.0;
    FisherInfo fisher;
    double ell_opt = 0.0;   // ell_star / sqrt(fisher.value), by construction
    double alpha_opt = 0.0; // evaluated at ell_star with unit information
    double g_at_opt = 0.0;
    bool conjecture_only = false;
};

// Composes fisher_information and optimize_ell_star for one (proposal,
// target) pair; bounded targets require the logit map.
ScalingResult optimal_scaling(const ProposalFamily& p, const TargetDensity& t,
                              const std::optional<LogitMap>& m);

struct Table1Row {
    std::string proposal;
    std::string target;
    double ell_star = 0.0;
    double fisher = 0.0;
    double ell_opt = 0.0;
    double alpha_opt = 0.0;
    bool conjecture_only = false;
};

// The 6 proposals x 2 bounded targets grid: cauchy, t2..t5, uniform_sym
// against truncnormal(0,1,-1,1) and uniform(-1,1). Rows appear in that
// order regardless of thread count.
std::vector<Table1Row> table1_rows(int threads = 1);

} // namespace optscale

#endif
