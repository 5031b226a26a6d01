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
 * Empirical chain diagnostics. Multivariate traces are diagnosed on the
 * first coordinate, matching the sped-up-first-component viewpoint of the
 * diffusion limit.
 */

#ifndef OPTSCALE_DIAGNOSTICS_HPP
#define OPTSCALE_DIAGNOSTICS_HPP

#include <functional>
#include <vector>

#include "optscale/mcmc_kernels.hpp"

namespace optscale {

// Fraction of accepted transitions; throws on an empty trace.
double empirical_acceptance(const ChainTrace& trace);

// Mean over transitions of the squared displacement summed over coordinates.
double esjd(const ChainTrace& trace);

// Biased (divide-by-n) autocorrelation estimates for lags 0..max_lag;
// requires series.size() > max_lag and positive variance.
std::vector<double> acf(const std::vector<double>& series, int max_lag);

// Effective sample size n / (1 + 2 sum rho_k) with Geyer's initial positive
// sequence rule: accumulate pair sums rho_{2m} + rho_{2m+1} while positive.
double ess(const std::vector<double>& series);

// Sup distance between the empirical CDF of samples and cdf.
double ks_distance(std::vector<double> samples,
                   const std::function<double(double)>& cdf);

struct DiagnosticsReport {
    double acceptance_rate = 0.0;
    std::vector<double> acf; // lags 0..L
    double esjd = 0.0;
    double ess = 0.0;
    double ks_to_target = 0.0;
};

// First-coordinate diagnostics bundle for one trace.
DiagnosticsReport diagnose(const ChainTrace& trace, int max_lag,
                           const std::function<double(double)>& target_cdf);

// First coordinate of every state, the series all scalar diagnostics use.
std::vector<double> first_coordinate(const ChainTrace& trace);

} // namespace optscale

#endif
