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
 * Logit bijection between a bounded interval (a,b) and the real line,
 * the induced transformed density, and Fisher information in either space.
 *
 * The transformed-space information integral is evaluated after substituting
 * p = e^y/(1+e^y), which maps the doubly-infinite integral onto (0,1) and
 * removes tail truncation error entirely:
 *
 *   I_Y = int_0^1 [1 - 2p + s(z) (b-a) p(1-p)]^2 (b-a) f_X(z) dp,
 *   z = a + (b-a) p,  s = (log f_X)'.
 */

#ifndef OPTSCALE_SUPPORT_TRANSFORM_HPP
#define OPTSCALE_SUPPORT_TRANSFORM_HPP

#include <optional>

#include "optscale/target_model.hpp"

namespace optscale {

struct LogitMap {
    double a;
    double b;

    // y = log((x-a)/(b-x)); throws std::domain_error outside the open interval.
    double forward(double x) const;

    // x = (a + b e^y)/(1 + e^y), computed sign-split so large |y| cannot
    // overflow; saturates to the nearest representable interior point.
    double inverse(double y) const;
};

inline LogitMap logit_map_for(const TargetDensity& t) {
    return LogitMap{t.support().a, t.support().b};
}

inline double logit_forward(const LogitMap& m, double x) { return m.forward(x); }
inline double logit_inverse(const LogitMap& m, double y) { return m.inverse(y); }

// log f_Y(y) = log(b-a) + y - 2 log(1+e^y) + log f_X(inverse(y)),
// with the softplus term computed log1p-style.
double transformed_log_density(const LogitMap& m, const TargetDensity& t,
                               double y);

struct FisherInfo {
    enum class Space { original, transformed };
    double value = 0.0;
    Space space = Space::original;
};

// I_Y (map supplied, bounded target) or I_X (no map, unbounded target).
// Quadrature absolute tolerance 1e-9; a non-finite integrand raises
// QuadratureError carrying the offending abscissa.
FisherInfo fisher_information(const std::optional<LogitMap>& m,
                              const TargetDensity& t);

} // namespace optscale

#endif
