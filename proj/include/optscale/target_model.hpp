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
 * One-dimensional component densities of iid product targets.
 *
 * Three built-ins: truncated normal on an interval, uniform on an interval,
 * and the unbounded normal. Bounded targets evaluate to -inf on the closed
 * complement of the open interval (boundary points reject), which gives the
 * Metropolis kernels a definite convention for float comparisons.
 */

#ifndef OPTSCALE_TARGET_MODEL_HPP
#define OPTSCALE_TARGET_MODEL_HPP

#include <string>
#include <vector>

#include "optscale/rng.hpp"

namespace optscale {

struct Support {
    enum class Kind { unbounded, interval };
    Kind kind = Kind::unbounded;
    double a = 0.0; // lower endpoint, interval only
    double b = 0.0; // upper endpoint, interval only

    bool contains(double x) const {
        return kind == Kind::unbounded || (x > a && x < b);
    }
};

class TargetDensity {
  public:
    enum class Family { trunc_normal, uniform, normal };

    static TargetDensity trunc_normal(double mu, double sigma, double a,
                                      double b);
    static TargetDensity uniform(double a, double b);
    static TargetDensity normal(double mu, double sigma);

    // Grammar: truncnormal(mu,sigma,a,b) | uniform(a,b) | normal(mu,sigma),
    // case-insensitive, whitespace tolerated.
    static TargetDensity parse(const std::string& spec);

    const Support& support() const { return support_; }
    Family family() const { return family_; }
    const std::string& name() const { return name_; }

    // log f_X(x); -inf outside the open support.
    double log_f(double x) const;

    // (log f_X)'(x); throws std::domain_error on or outside the boundary.
    double dlog_f(double x) const;

    // Exact stationary draw (inverse-CDF for the truncated normal).
    double sample(Rng& rng) const;

    // Analytic CDF, used by diagnostics and distributional tests.
    double cdf(double x) const;

  private:
    TargetDensity() = default;
    Family family_ = Family::normal;
    Support support_;
    std::string name_;
    double mu_ = 0.0;
    double sigma_ = 1.0;
    double log_norm_ = 0.0;  // log of the normalizing constant subtracted in log_f
    double cdf_lo_ = 0.0;    // Phi((a-mu)/sigma), truncated normal only
    double cdf_span_ = 1.0;  // Phi((b-mu)/sigma) - cdf_lo_
};

struct ProductTarget {
    TargetDensity component;
    int d = 1; // dimension, >= 1
};

// Sum of component log densities; -inf if any coordinate is out of support.
// Throws std::invalid_argument if x.size() != t.d.
double log_density_joint(const ProductTarget& t, const std::vector<double>& x);

// Component score at an interior point.
double grad_log_component(const TargetDensity& t, double x);

// d iid stationary draws.
std::vector<double> sample_stationary(const ProductTarget& t, Rng& rng);

} // namespace optscale

#endif
