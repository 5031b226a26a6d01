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

#include "optscale/scaling_engine.hpp"

#include <cmath>
#include <stdexcept>
#include <thread>

#include "optscale/quadrature.hpp"

namespace optscale {

namespace {

constexpr double kQuadTol = 1e-10;

// Integral of h(u) q(u) over the positive support of q. For uniform_sym the
// domain is exactly (0,1); otherwise the half line is compactified.
template <class H>
double q_weighted_positive(const ProposalFamily& p, H&& h) {
    auto integrand = [&](double u) { return h(u) * p.density_q(u); };
    if (p.bounded_q_support()) {
        return integrate(integrand, 0.0, p.q_support_upper(), kQuadTol);
    }
    return integrate_half_line(integrand, kQuadTol);
}

} // namespace

double g_star(double ell, const ProposalFamily& p) {
    if (ell < 0.0) {
        throw std::domain_error("g_star: ell must be nonnegative");
    }
    if (ell == 0.0) {
        return 0.0;
    }
    const double integral = q_weighted_positive(p, [&](double u) {
        return u * u * normal_cdf(-0.5 * u * ell);
    });
    return 4.0 * ell * ell * integral;
}

double g_speed(double ell, const ProposalFamily& p, double fisher) {
    if (!(fisher > 0.0)) {
        throw std::domain_error("g_speed: fisher must be positive");
    }
    if (ell < 0.0) {
        throw std::domain_error("g_speed: ell must be nonnegative");
    }
    if (ell == 0.0) {
        return 0.0;
    }
    const double root_i = std::sqrt(fisher);
    const double integral = q_weighted_positive(p, [&](double u) {
        return u * u * normal_cdf(-0.5 * u * ell * root_i);
    });
    return 4.0 * ell * ell * integral;
}

double acceptance_curve(double ell, const ProposalFamily& p, double fisher) {
    if (!(fisher > 0.0)) {
        throw std::domain_error("acceptance_curve: fisher must be positive");
    }
    if (ell < 0.0) {
        throw std::domain_error("acceptance_curve: ell must be nonnegative");
    }
    const double root_i = std::sqrt(fisher);
    return 4.0 * q_weighted_positive(p, [&](double u) {
               return normal_cdf(-0.5 * u * ell * root_i);
           });
}

namespace {

constexpr double kEllMax = 100.0;

struct Bracket {
    double lo, mid, hi;
};

// Doubling search from 0.1: g_star(0) = 0, so the first decrease brackets
// an interior maximum.
Bracket bracket_maximum(const ProposalFamily& p) {
    double prev_x = 0.0;
    double prev_g = 0.0;
    double x = 0.1;
    double g = g_star(x, p);
    while (true) {
        const double next_x = 2.0 * x;
        if (next_x > kEllMax) {
            throw std::runtime_error(
                "optimize_ell_star: no interior maximum below ell = 100");
        }
        const double next_g = g_star(next_x, p);
        if (next_g < g) {
            return {prev_x, x, next_x};
        }
        prev_x = x;
        prev_g = g;
        x = next_x;
        g = next_g;
    }
    (void)prev_g;
}

double golden_section(const ProposalFamily& p, double lo, double hi) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = g_star(x1, p);
    double f2 = g_star(x2, p);
    while (hi - lo > 1e-6) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = g_star(x2, p);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = g_star(x1, p);
        }
    }
    return 0.5 * (lo + hi);
}

// Golden-section assumes unimodality; verify it on a coarse sweep around the
// bracket. Ties within quadrature noise are tolerated.
void verify_unimodal(const ProposalFamily& p, const Bracket& br) {
    constexpr int n_before = 25;
    constexpr int n_after = 25;
    constexpr double slack = 1e-9;

    double prev = 0.0;
    for (int i = 1; i <= n_before; ++i) {
        const double x = br.lo * static_cast<double>(i) / n_before;
        const double g = g_star(x, p);
        if (g < prev - slack) {
            throw std::runtime_error(
                "optimize_ell_star: g_star not increasing before the bracket");
        }
        prev = g;
    }
    prev = g_star(br.hi, p);
    for (int i = 1; i <= n_after; ++i) {
        const double x = br.hi + (2.0 * br.hi) * static_cast<double>(i) /
                                     n_after;
        const double g = g_star(x, p);
        if (g > prev + slack) {
            throw std::runtime_error(
                "optimize_ell_star: g_star not decreasing after the bracket");
        }
        prev = g;
    }
}

} // namespace

double optimize_ell_star(const ProposalFamily& p) {
    const Bracket br = bracket_maximum(p);
    verify_unimodal(p, br);
    return golden_section(p, br.lo, br.hi);
}

ScalingResult optimal_scaling(const ProposalFamily& p, const TargetDensity& t,
                              const std::optional<LogitMap>& m) {
    ScalingResult r;
    r.fisher = fisher_information(m, t);
    r.ell_star = optimize_ell_star(p);
    r.ell_opt = r.ell_star / std::sqrt(r.fisher.value);
    r.alpha_opt = acceptance_curve(r.ell_star, p, 1.0);
    r.g_at_opt = g_star(r.ell_star, p);
    r.conjecture_only = p.conjecture_only();
    return r;
}

std::vector<Table1Row> table1_rows(int threads) {
    const std::vector<ProposalFamily> proposals = {
        ProposalFamily::cauchy(),      ProposalFamily::student_t(2),
        ProposalFamily::student_t(3),  ProposalFamily::student_t(4),
        ProposalFamily::student_t(5),  ProposalFamily::uniform_sym()};
    const std::vector<TargetDensity> targets = {
        TargetDensity::trunc_normal(0.0, 1.0, -1.0, 1.0),
        TargetDensity::uniform(-1.0, 1.0)};

    // Shared work: 2 information values and 6 maximizers.
    double fisher[2];
    for (int j = 0; j < 2; ++j) {
        fisher[j] =
            fisher_information(logit_map_for(targets[j]), targets[j]).value;
    }

    const int n = static_cast<int>(proposals.size());
    std::vector<double> ell_star_v(n);
    std::vector<double> alpha_v(n);
    const int workers = std::max(1, std::min(threads, n));
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w]() {
            for (int i = w; i < n; i += workers) {
                ell_star_v[i] = optimize_ell_star(proposals[i]);
                alpha_v[i] = acceptance_curve(ell_star_v[i], proposals[i], 1.0);
            }
        });
    }
    for (auto& th : pool) {
        th.join();
    }

    std::vector<Table1Row> rows;
    rows.reserve(2 * proposals.size());
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < 2; ++j) {
            Table1Row row;
            row.proposal = proposals[i].name();
            row.target = targets[j].name();
            row.ell_star = ell_star_v[i];
            row.fisher = fisher[j];
            row.ell_opt = ell_star_v[i] / std::sqrt(fisher[j]);
            row.alpha_opt = alpha_v[i];
            row.conjecture_only = proposals[i].conjecture_only();
            rows.push_back(row);
        }
    }
    return rows;
}

} // namespace optscale
