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
 * Reference CDFs for goodness-of-fit tests, independent of the library's
 * sampling code paths. The Student-t CDF goes through the regularized
 * incomplete beta function (Lentz continued fraction).
 */

#ifndef OPTSCALE_TESTS_STAT_ORACLES_HPP
#define OPTSCALE_TESTS_STAT_ORACLES_HPP

#include <cmath>

#include "optscale/quadrature.hpp"

namespace oracles {

inline double betacf(double a, double b, double x) {
    const int max_iter = 300;
    const double eps = 3e-16;
    const double fpmin = 1e-300;
    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < fpmin) {
        d = fpmin;
    }
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= max_iter; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < fpmin) {
            d = fpmin;
        }
        c = 1.0 + aa / c;
        if (std::fabs(c) < fpmin) {
            c = fpmin;
        }
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < fpmin) {
            d = fpmin;
        }
        c = 1.0 + aa / c;
        if (std::fabs(c) < fpmin) {
            c = fpmin;
        }
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < eps) {
            break;
        }
    }
    return h;
}

// Regularized incomplete beta I_x(a, b).
inline double betainc(double a, double b, double x) {
    if (x <= 0.0) {
        return 0.0;
    }
    if (x >= 1.0) {
        return 1.0;
    }
    const double ln_bt = std::lgamma(a + b) - std::lgamma(a) -
                         std::lgamma(b) + a * std::log(x) +
                         b * std::log1p(-x);
    const double bt = std::exp(ln_bt);
    if (x < (a + 1.0) / (a + b + 2.0)) {
        return bt * betacf(a, b, x) / a;
    }
    return 1.0 - bt * betacf(b, a, 1.0 - x) / b;
}

inline double student_t_cdf(double x, int nu) {
    if (x == 0.0) {
        return 0.5;
    }
    const double v = static_cast<double>(nu);
    const double w = betainc(0.5 * v, 0.5, v / (v + x * x));
    return x > 0.0 ? 1.0 - 0.5 * w : 0.5 * w;
}

inline double cauchy_cdf(double x) {
    return 0.5 + std::atan(x) / 3.14159265358979323846;
}

// CDF of |Z| for Z standard Cauchy; 0 below the origin.
inline double half_cauchy_cdf(double x) {
    return x <= 0.0 ? 0.0 : 2.0 * std::atan(x) / 3.14159265358979323846;
}

inline double half_normal_cdf(double x) {
    return x <= 0.0 ? 0.0 : 2.0 * optscale::normal_cdf(x) - 1.0;
}

inline double half_student_t_cdf(double x, int nu) {
    return x <= 0.0 ? 0.0 : 2.0 * student_t_cdf(x, nu) - 1.0;
}

inline double trunc_normal_cdf(double x, double mu, double sigma, double a,
                               double b) {
    if (x <= a) {
        return 0.0;
    }
    if (x >= b) {
        return 1.0;
    }
    const double lo = optscale::normal_cdf((a - mu) / sigma);
    const double hi = optscale::normal_cdf((b - mu) / sigma);
    return (optscale::normal_cdf((x - mu) / sigma) - lo) / (hi - lo);
}

} // namespace oracles

#endif
