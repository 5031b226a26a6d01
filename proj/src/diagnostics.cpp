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

#include "optscale/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace optscale {

double empirical_acceptance(const ChainTrace& trace) {
    if (trace.accepted.empty()) {
        throw std::invalid_argument(
            "empirical_acceptance: trace has no transitions");
    }
    const auto n_acc = std::count(trace.accepted.begin(), trace.accepted.end(),
                                  true);
    return static_cast<double>(n_acc) /
           static_cast<double>(trace.accepted.size());
}

double esjd(const ChainTrace& trace) {
    if (trace.states.size() < 2) {
        throw std::invalid_argument("esjd: need at least two states");
    }
    double sum = 0.0;
    for (std::size_t k = 0; k + 1 < trace.states.size(); ++k) {
        const auto& cur = trace.states[k];
        const auto& nxt = trace.states[k + 1];
        for (std::size_t i = 0; i < cur.size(); ++i) {
            const double diff = nxt[i] - cur[i];
            sum += diff * diff;
        }
    }
    return sum / static_cast<double>(trace.states.size() - 1);
}

namespace {

// Autocovariance at one lag, biased normalization (divide by n).
double autocov(const std::vector<double>& series, double mean, int lag) {
    const std::size_t n = series.size();
    double sum = 0.0;
    for (std::size_t t = 0; t + lag < n; ++t) {
        sum += (series[t] - mean) * (series[t + lag] - mean);
    }
    return sum / static_cast<double>(n);
}

double series_mean(const std::vector<double>& series) {
    return std::accumulate(series.begin(), series.end(), 0.0) /
           static_cast<double>(series.size());
}

} // namespace

std::vector<double> acf(const std::vector<double>& series, int max_lag) {
    if (max_lag < 1 || series.size() <= static_cast<std::size_t>(max_lag)) {
        throw std::invalid_argument("acf: series shorter than max_lag");
    }
    const double mean = series_mean(series);
    const double c0 = autocov(series, mean, 0);
    if (!(c0 > 0.0)) {
        throw std::invalid_argument("acf: series has zero variance");
    }
    std::vector<double> out(max_lag + 1);
    out[0] = 1.0;
    for (int k = 1; k <= max_lag; ++k) {
        out[k] = autocov(series, mean, k) / c0;
    }
    return out;
}

double ess(const std::vector<double>& series) {
    const std::size_t n = series.size();
    if (n < 4) {
        throw std::invalid_argument("ess: series too short");
    }
    const double mean = series_mean(series);
    const double c0 = autocov(series, mean, 0);
    if (!(c0 > 0.0)) {
        throw std::invalid_argument("ess: series has zero variance");
    }

    // Geyer initial positive sequence: tau = -1 + 2 sum_m Gamma_m over the
    // leading positive pair sums Gamma_m = rho_{2m} + rho_{2m+1}. Lags are
    // computed one at a time so the scan stops as early as the rule allows.
    const int max_lag =
        static_cast<int>(std::min<std::size_t>(n - 2, 10000));
    double tau = -1.0;
    for (int m = 0; 2 * m + 1 <= max_lag; ++m) {
        const double rho_even =
            m == 0 ? 1.0 : autocov(series, mean, 2 * m) / c0;
        const double rho_odd = autocov(series, mean, 2 * m + 1) / c0;
        const double pair = rho_even + rho_odd;
        if (pair <= 0.0) {
            break;
        }
        tau += 2.0 * pair;
    }
    // Antithetic chains can push tau below zero after truncation; clamp to
    // keep the estimate finite and positive (ESS at most n^2).
    tau = std::max(tau, 1.0 / static_cast<double>(n));
    return static_cast<double>(n) / tau;
}

double ks_distance(std::vector<double> samples,
                   const std::function<double(double)>& cdf) {
    if (samples.empty()) {
        throw std::invalid_argument("ks_distance: no samples");
    }
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double dist = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double f = cdf(samples[i]);
        dist = std::max(dist, f - static_cast<double>(i) / n);
        dist = std::max(dist, static_cast<double>(i + 1) / n - f);
    }
    return dist;
}

std::vector<double> first_coordinate(const ChainTrace& trace) {
    std::vector<double> out;
    out.reserve(trace.states.size());
    for (const auto& s : trace.states) {
        out.push_back(s.at(0));
    }
    return out;
}

DiagnosticsReport diagnose(const ChainTrace& trace, int max_lag,
                           const std::function<double(double)>& target_cdf) {
    DiagnosticsReport r;
    r.acceptance_rate = empirical_acceptance(trace);
    const auto series = first_coordinate(trace);
    r.acf = acf(series, max_lag);
    r.esjd = esjd(trace);
    r.ess = ess(series);
    r.ks_to_target = ks_distance(series, target_cdf);
    return r;
}

} // namespace optscale
