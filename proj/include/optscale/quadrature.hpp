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
 * Adaptive Gauss-Kronrod (G7,K15) quadrature with compactifying substitutions
 * for half-line and whole-line integrals, plus the normal CDF and quantile.
 *
 * Semi-infinite integrands here always decay fast enough that mapping
 * u = s/(1-s) onto (0,1) and refining adaptively beats truncating the tail:
 * the Kronrod nodes never touch the endpoints, so the transformed integrand
 * is only ever evaluated strictly inside the domain.
 */

#ifndef OPTSCALE_QUADRATURE_HPP
#define OPTSCALE_QUADRATURE_HPP

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace optscale {

// Raised when refinement stalls (residual = unmet error estimate) or the
// integrand produced a non-finite value (abscissa = offending point).
class QuadratureError : public std::runtime_error {
  public:
    QuadratureError(const std::string& what, double residual, double abscissa)
        : std::runtime_error(what), residual(residual), abscissa(abscissa) {}
    double residual;
    double abscissa;
};

namespace detail {

// Kronrod 15-point abscissae with embedded Gauss-7 weights (zero where the
// node is Kronrod-only). Rows: {node, gauss weight, kronrod weight}.
inline constexpr double gk_nodes[8][3] = {
    {0.000000000000000, 0.417959183673469, 0.209482141084728},
    {0.405845151377397, 0.381830050505119, 0.190350578064785},
    {0.741531185599394, 0.279705391489277, 0.140653259715525},
    {0.949107912342759, 0.129484966168870, 0.063092092629979},
    {0.207784955007898, 0.0,               0.204432940075298},
    {0.586087235467691, 0.0,               0.169004726639267},
    {0.864864423359769, 0.0,               0.104790010322250},
    {0.991455371120813, 0.0,               0.022935322010529},
};

template <class Func>
double gk15(Func& f, double a, double b, double& err) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    auto eval = [&](double x) {
        const double y = f(x);
        if (!std::isfinite(y)) {
            throw QuadratureError("non-finite integrand value",
                                  std::nan(""), x);
        }
        return y;
    };

    const double y0 = eval(mid);
    double g7 = gk_nodes[0][1] * y0;
    double k15 = gk_nodes[0][2] * y0;
    for (int i = 1; i < 8; ++i) {
        const double dx = half * gk_nodes[i][0];
        const double yi = eval(mid + dx) + eval(mid - dx);
        g7 += gk_nodes[i][1] * yi;
        k15 += gk_nodes[i][2] * yi;
    }
    g7 *= half;
    k15 *= half;

    // QUADPACK-style inflation of the raw G7-K15 discrepancy.
    err = 200.0 * std::fabs(g7 - k15);
    err *= std::sqrt(err);
    return k15;
}

} // namespace detail

// Adaptive bisection over a finite interval. Each subinterval must meet a
// tolerance share proportional to its width.
template <class Func>
double integrate(Func&& f, double a, double b, double abs_tol = 1e-10) {
    struct Seg {
        double a, b;
    };
    std::vector<Seg> work{{a, b}};
    const double width = b - a;
    double total = 0.0;
    int segments = 0;
    const int max_segments = 100000;

    while (!work.empty()) {
        const Seg seg = work.back();
        work.pop_back();
        double err = 0.0;
        const double val = detail::gk15(f, seg.a, seg.b, err);
        const double share = abs_tol * (seg.b - seg.a) / width;
        if (err <= share) {
            total += val;
            continue;
        }
        const double mid = 0.5 * (seg.a + seg.b);
        if (mid <= seg.a || mid >= seg.b || ++segments > max_segments) {
            throw QuadratureError("quadrature failed to converge", err,
                                  std::nan(""));
        }
        work.push_back({seg.a, mid});
        work.push_back({mid, seg.b});
    }
    return total;
}

// Integral over (0, inf) via u = s/(1-s).
template <class Func>
double integrate_half_line(Func&& f, double abs_tol = 1e-10) {
    auto g = [&](double s) {
        const double om = 1.0 - s;
        return f(s / om) / (om * om);
    };
    return integrate(g, 0.0, 1.0, abs_tol);
}

// Integral over the whole real line via x = t/(1-t^2), t in (-1,1).
template <class Func>
double integrate_real_line(Func&& f, double abs_tol = 1e-10) {
    auto g = [&](double t) {
        const double d = 1.0 - t * t;
        return f(t / d) * (1.0 + t * t) / (d * d);
    };
    return integrate(g, -1.0, 1.0, abs_tol);
}

double normal_cdf(double x);

// Inverse of normal_cdf on (0,1); accurate to ~1e-15 across the domain.
double normal_quantile(double p);

} // namespace optscale

#endif
