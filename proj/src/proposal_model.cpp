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

#include "optscale/proposal_model.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace optscale {

namespace {

const double kLogSqrt2Pi = 0.5 * std::log(2.0 * std::numbers::pi);

// Bailey's polar method: exact Student-t variate from a uniform disk pair.
// The loop consumes a geometric number of uniform pairs (mean 4/pi draws).
double bailey_t(int nu, Rng& rng) {
    double u, v, w;
    do {
        u = 2.0 * rng.uniform() - 1.0;
        v = 2.0 * rng.uniform() - 1.0;
        w = u * u + v * v;
    } while (w > 1.0 || w == 0.0);
    return u * std::sqrt(nu * (std::pow(w, -2.0 / nu) - 1.0) / w);
}

} // namespace

ProposalFamily ProposalFamily::gaussian() {
    ProposalFamily p;
    p.kind_ = Kind::gaussian;
    p.name_ = "gaussian";
    p.finite_second_moment_ = true;
    return p;
}

ProposalFamily ProposalFamily::student_t(int nu) {
    if (nu < 1) {
        throw std::invalid_argument("student_t: nu must be >= 1");
    }
    ProposalFamily p;
    p.kind_ = Kind::student_t;
    p.nu_ = nu;
    p.name_ = nu == 1 ? "cauchy" : "t" + std::to_string(nu);
    p.log_t_norm_ = std::lgamma(0.5 * (nu + 1)) - std::lgamma(0.5 * nu) -
                    0.5 * std::log(nu * std::numbers::pi);
    p.finite_second_moment_ = nu >= 3; // E eps^2 infinite for nu <= 2
    p.conjecture_only_ = nu == 1;
    return p;
}

ProposalFamily ProposalFamily::uniform_sym() {
    ProposalFamily p;
    p.kind_ = Kind::uniform_sym;
    p.name_ = "uniform_sym";
    p.finite_second_moment_ = true;
    return p;
}

ProposalFamily ProposalFamily::parse(const std::string& spec) {
    std::string s;
    for (const char c : spec) {
        if (!std::isspace(static_cast<unsigned char>(c))) {
            s.push_back(static_cast<char>(
                std::tolower(static_cast<unsigned char>(c))));
        }
    }
    if (s == "gaussian") {
        return gaussian();
    }
    if (s == "cauchy") {
        return cauchy();
    }
    if (s == "uniform01") {
        return uniform_sym();
    }
    if (s.size() > 1 && s[0] == 't' &&
        std::all_of(s.begin() + 1, s.end(),
                    [](unsigned char c) { return std::isdigit(c); })) {
        return student_t(std::stoi(s.substr(1)));
    }
    throw std::invalid_argument("unknown proposal family: " + spec);
}

double ProposalFamily::density_q(double u) const {
    switch (kind_) {
    case Kind::gaussian:
        return std::exp(-0.5 * u * u - kLogSqrt2Pi);
    case Kind::student_t:
        return std::exp(log_t_norm_ -
                        0.5 * (nu_ + 1) * std::log1p(u * u / nu_));
    case Kind::uniform_sym:
        return std::fabs(u) < 1.0 ? 0.5 : 0.0;
    }
    return 0.0;
}

double ProposalFamily::sample_positive(Rng& rng) const {
    ++rng.counts.proposal_draws;
    switch (kind_) {
    case Kind::gaussian:
        return std::fabs(rng.normal());
    case Kind::student_t:
        if (nu_ == 1) {
            // Half-Cauchy inverse CDF, branch-free.
            return std::tan(0.5 * std::numbers::pi * rng.uniform());
        }
        return std::fabs(bailey_t(nu_, rng));
    case Kind::uniform_sym:
        return rng.uniform();
    }
    return 0.0;
}

double ProposalFamily::sample_symmetric(Rng& rng) const {
    ++rng.counts.proposal_draws;
    switch (kind_) {
    case Kind::gaussian:
        return rng.normal();
    case Kind::student_t:
        if (nu_ == 1) {
            return std::tan(std::numbers::pi * (rng.uniform() - 0.5));
        }
        return bailey_t(nu_, rng);
    case Kind::uniform_sym:
        return 2.0 * rng.uniform() - 1.0;
    }
    return 0.0;
}

double ProposalFamily::q_support_upper() const {
    return kind_ == Kind::uniform_sym
               ? 1.0
               : std::numeric_limits<double>::infinity();
}

} // namespace optscale
