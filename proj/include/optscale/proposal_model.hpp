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
 * Proposal families: the symmetric density q of b * eps on the reals and
 * samplers for the positive part eps > 0 (additive TMCMC) and the full
 * symmetric variate (RWM increments).
 *
 * Normalization convention: q is always the full symmetric density of
 * b * eps, so its positive-half mass is 1/2. This is what makes the
 * acceptance-rate curve tend to 1 as the scale tends to 0.
 */

#ifndef OPTSCALE_PROPOSAL_MODEL_HPP
#define OPTSCALE_PROPOSAL_MODEL_HPP

#include <string>

#include "optscale/rng.hpp"

namespace optscale {

class ProposalFamily {
  public:
    enum class Kind { gaussian, student_t, uniform_sym };

    static ProposalFamily gaussian();
    static ProposalFamily student_t(int nu); // nu >= 1; nu = 1 is Cauchy
    static ProposalFamily cauchy() { return student_t(1); }
    static ProposalFamily uniform_sym();

    // Grammar: gaussian | tN (integer N >= 1) | cauchy | uniform01,
    // case-insensitive. t1 and cauchy are the same family.
    static ProposalFamily parse(const std::string& spec);

    const std::string& name() const { return name_; }
    Kind kind() const { return kind_; }
    int nu() const { return nu_; }

    // Density of b * eps at u, symmetric about 0.
    double density_q(double u) const;

    // One draw of eps from the positive half of the family. Counted as a
    // proposal draw.
    double sample_positive(Rng& rng) const;

    // One draw of b * eps (full symmetric family). Counted as a proposal draw.
    double sample_symmetric(Rng& rng) const;

    bool finite_second_moment() const { return finite_second_moment_; }

    // True only for the Cauchy family: its diffusion-limit optimality is an
    // empirically supported conjecture, not a proved theorem.
    bool conjecture_only() const { return conjecture_only_; }

    // uniform_sym has q supported on (-1,1); everything else on the reals.
    bool bounded_q_support() const { return kind_ == Kind::uniform_sym; }
    double q_support_upper() const;

  private:
    ProposalFamily() = default;
    Kind kind_ = Kind::gaussian;
    int nu_ = 0;
    std::string name_;
    double log_t_norm_ = 0.0; // Student-t density normalizer, log scale
    bool finite_second_moment_ = true;
    bool conjecture_only_ = false;
};

} // namespace optscale

#endif
