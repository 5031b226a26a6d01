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

#include "optscale/support_transform.hpp"

#include <cmath>
#include <stdexcept>

#include "optscale/quadrature.hpp"

namespace optscale {

double LogitMap::forward(double x) const {
    if (!(x > a && x < b)) {
        throw std::domain_error("logit_forward: x outside the open interval");
    }
    return std::log((x - a) / (b - x));
}

double LogitMap::inverse(double y) const {
    double x;
    if (y >= 0.0) {
        const double t = std::exp(-y); // in (0,1], no overflow
        x = (a * t + b) / (1.0 + t);
    } else {
        const double t = std::exp(y);
        x = (a + b * t) / (1.0 + t);
    }
    // Saturation keeps the result strictly interior even for |y| ~ 800.
    if (x >= b) {
        x = std::nextafter(b, a);
    }
    if (x <= a) {
        x = std::nextafter(a, b);
    }
    return x;
}

namespace {

// log(1 + e^y) without overflow for either sign of y.
double softplus(double y) {
    return y > 0.0 ? y + std::log1p(std::exp(-y)) : std::log1p(std::exp(y));
}

} // namespace

double transformed_log_density(const LogitMap& m, const TargetDensity& t,
                               double y) {
    if (t.support().kind != Support::Kind::interval ||
        t.support().a != m.a || t.support().b != m.b) {
        throw std::invalid_argument(
            "transformed_log_density: map does not match the target support");
    }
    return std::log(m.b - m.a) + y - 2.0 * softplus(y) +
           t.log_f(m.inverse(y));
}

FisherInfo fisher_information(const std::optional<LogitMap>& m,
                              const TargetDensity& t) {
    const bool bounded = t.support().kind == Support::Kind::interval;
    if (bounded && !m) {
        throw std::invalid_argument(
            "fisher_information: bounded target requires a logit map");
    }
    if (!bounded && m) {
        throw std::invalid_argument(
            "fisher_information: unbounded target takes no map");
    }

    if (!bounded) {
        // I_X = E (log f_X)'(X)^2, whole-line quadrature.
        auto integrand = [&](double x) {
            const double s = t.dlog_f(x);
            return s * s * std::exp(t.log_f(x));
        };
        return {integrate_real_line(integrand, 1e-9),
                FisherInfo::Space::original};
    }

    const double a = m->a;
    const double b = m->b;
    const double w = b - a;
    auto integrand = [&](double p) {
        const double z = a + w * p;
        const double s = t.dlog_f(z);
        const double core = 1.0 - 2.0 * p + s * w * p * (1.0 - p);
        return core * core * w * std::exp(t.log_f(z));
    };
    return {integrate(integrand, 0.0, 1.0, 1e-9),
            FisherInfo::Space::transformed};
}

} // namespace optscale
