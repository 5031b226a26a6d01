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

#ifndef OPTSCALE_RNG_HPP
#define OPTSCALE_RNG_HPP

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace optscale {

// Draw bookkeeping for the kernel call-count contract: a TMCMC step consumes
// one proposal variate plus d signs, an RWM step consumes d proposal variates
// and no signs. Acceptance uniforms are deliberately untracked.
struct DrawCounts {
    std::uint64_t proposal_draws = 0;
    std::uint64_t sign_draws = 0;
};

namespace detail {

// SplitMix64 finalizer. Used to decorrelate raw seeds and to derive
// per-chain substream seeds in closed form (no state advancing needed).
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

} // namespace detail

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(detail::mix64(seed)) {}

    // Substream k of a master seed, reproducible independent of thread
    // scheduling: seed_k = mix(master + (k+1) * golden-gamma).
    static Rng substream(std::uint64_t master, std::uint64_t index) {
        return Rng(master + (index + 1) * 0x9E3779B97F4A7C15ull);
    }

    // Uniform on the open interval (0,1); both endpoints are unreachable.
    double uniform() {
        return (static_cast<double>(gen_() >> 11) + 0.5) * 0x1.0p-53;
    }

    // Standard normal via Box-Muller without caching the second variate,
    // so every call consumes exactly two uniforms.
    double normal() {
        const double u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) *
               std::cos(2.0 * std::numbers::pi * u2);
    }

    // Random sign +/-1 with probability 1/2 each. Tracked.
    int sign() {
        ++counts.sign_draws;
        return (gen_() >> 63) ? 1 : -1;
    }

    DrawCounts counts;

  private:
    std::mt19937_64 gen_;
};

} // namespace optscale

#endif
