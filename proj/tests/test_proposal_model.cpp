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

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "optscale/diagnostics.hpp"
#include "optscale/proposal_model.hpp"
#include "optscale/quadrature.hpp"
#include "optscale/rng.hpp"

#include "support/stat_oracles.hpp"

using optscale::ProposalFamily;
using optscale::Rng;

TEST_SUITE("proposal_model") {

TEST_CASE("parser grammar") {
    CHECK(ProposalFamily::parse("gaussian").kind() ==
          ProposalFamily::Kind::gaussian);
    CHECK(ProposalFamily::parse("GAUSSIAN").kind() ==
          ProposalFamily::Kind::gaussian);
    CHECK(ProposalFamily::parse(" cauchy ").nu() == 1);
    CHECK(ProposalFamily::parse("t1").nu() == 1);
    CHECK(ProposalFamily::parse("T3").nu() == 3);
    CHECK(ProposalFamily::parse("t12").nu() == 12);
    // Whitespace is stripped before matching anywhere in the token.
    CHECK(ProposalFamily::parse("t 3").nu() == 3);
    CHECK(ProposalFamily::parse("uniform01").kind() ==
          ProposalFamily::Kind::uniform_sym);

    for (const char* s : {"", "t0", "t-1", "t2.5", "t", "normal",
                          "uniform", "cauchy(1)"}) {
        CAPTURE(s);
        CHECK_THROWS_AS((void)ProposalFamily::parse(s),
                        std::invalid_argument);
    }
}

TEST_CASE("canonical names") {
    CHECK(ProposalFamily::gaussian().name() == "gaussian");
    CHECK(ProposalFamily::cauchy().name() == "cauchy");
    CHECK(ProposalFamily::student_t(1).name() == "cauchy");
    CHECK(ProposalFamily::student_t(4).name() == "t4");
    CHECK(ProposalFamily::uniform_sym().name() == "uniform_sym");
}

TEST_CASE("q is the full symmetric density") {
    // Reference pdf values computed independently.
    CHECK(ProposalFamily::gaussian().density_q(0.0) ==
          doctest::Approx(0.3989422804014327).epsilon(1e-13));
    CHECK(ProposalFamily::cauchy().density_q(0.0) ==
          doctest::Approx(1.0 / 3.14159265358979323846).epsilon(1e-13));
    CHECK(ProposalFamily::student_t(2).density_q(0.5) ==
          doctest::Approx(0.29629629629629634).epsilon(1e-12));
    CHECK(ProposalFamily::student_t(3).density_q(0.0) ==
          doctest::Approx(0.36755259694786135).epsilon(1e-12));
    CHECK(ProposalFamily::student_t(5).density_q(1.3) ==
          doctest::Approx(0.15847673572898244).epsilon(1e-12));
    CHECK(ProposalFamily::parse("t50").density_q(0.0) ==
          doctest::Approx(0.39695267973111026).epsilon(1e-12));

    const auto u = ProposalFamily::uniform_sym();
    CHECK(u.density_q(0.0) == 0.5);
    CHECK(u.density_q(0.999) == 0.5);
    CHECK(u.density_q(1.0) == 0.0);
    CHECK(u.density_q(-1.2) == 0.0);

    SUBCASE("symmetry") {
        for (const auto& p :
             {ProposalFamily::gaussian(), ProposalFamily::cauchy(),
              ProposalFamily::student_t(4), ProposalFamily::uniform_sym()}) {
            for (double x = 0.1; x < 3.0; x += 0.57) {
                CHECK(p.density_q(x) == p.density_q(-x));
            }
        }
    }
}

TEST_CASE("q integrates to one") {
    for (const auto& p :
         {ProposalFamily::gaussian(), ProposalFamily::cauchy(),
          ProposalFamily::student_t(2), ProposalFamily::student_t(5)}) {
        CAPTURE(p.name());
        const double mass = 2.0 * optscale::integrate_half_line(
                                      [&](double u) { return p.density_q(u); },
                                      1e-10);
        CHECK(mass == doctest::Approx(1.0).epsilon(1e-8));
    }
    const auto u = ProposalFamily::uniform_sym();
    CHECK(optscale::integrate([&](double x) { return u.density_q(x); }, -1.0,
                              1.0) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("moment and conjecture flags") {
    CHECK(ProposalFamily::gaussian().finite_second_moment());
    CHECK(ProposalFamily::uniform_sym().finite_second_moment());
    CHECK_FALSE(ProposalFamily::cauchy().finite_second_moment());
    CHECK_FALSE(ProposalFamily::student_t(2).finite_second_moment());
    CHECK(ProposalFamily::student_t(3).finite_second_moment());
    CHECK(ProposalFamily::student_t(5).finite_second_moment());

    CHECK(ProposalFamily::cauchy().conjecture_only());
    CHECK_FALSE(ProposalFamily::student_t(2).conjecture_only());
    CHECK_FALSE(ProposalFamily::gaussian().conjecture_only());
    CHECK_FALSE(ProposalFamily::uniform_sym().conjecture_only());
}

TEST_CASE("q support bounds") {
    CHECK(ProposalFamily::uniform_sym().bounded_q_support());
    CHECK(ProposalFamily::uniform_sym().q_support_upper() == 1.0);
    CHECK_FALSE(ProposalFamily::gaussian().bounded_q_support());
    CHECK(ProposalFamily::gaussian().q_support_upper() ==
          std::numeric_limits<double>::infinity());
    CHECK_FALSE(ProposalFamily::cauchy().bounded_q_support());
}

TEST_CASE("positive sampler laws") {
    const int n = 20000;
    std::vector<double> xs(n);

    Rng r1(11);
    const auto g = ProposalFamily::gaussian();
    for (auto& x : xs) {
        x = g.sample_positive(r1);
        REQUIRE(x > 0.0);
    }
    CHECK(r1.counts.proposal_draws == static_cast<std::uint64_t>(n));
    CHECK(optscale::ks_distance(xs, oracles::half_normal_cdf) < 0.012);

    Rng r2(12);
    const auto c = ProposalFamily::cauchy();
    for (auto& x : xs) {
        x = c.sample_positive(r2);
        REQUIRE(x > 0.0);
    }
    CHECK(optscale::ks_distance(xs, oracles::half_cauchy_cdf) < 0.012);

    Rng r3(13);
    const auto t3 = ProposalFamily::student_t(3);
    for (auto& x : xs) {
        x = t3.sample_positive(r3);
        REQUIRE(x > 0.0);
    }
    CHECK(optscale::ks_distance(
              xs, [](double x) { return oracles::half_student_t_cdf(x, 3); }) <
          0.012);

    Rng r4(14);
    const auto u = ProposalFamily::uniform_sym();
    for (auto& x : xs) {
        x = u.sample_positive(r4);
        REQUIRE(x > 0.0);
        REQUIRE(x < 1.0);
    }
    CHECK(optscale::ks_distance(xs, [](double x) { return x; }) < 0.012);
}

TEST_CASE("symmetric sampler laws") {
    const int n = 20000;
    std::vector<double> xs(n);

    Rng r1(21);
    const auto g = ProposalFamily::gaussian();
    for (auto& x : xs) {
        x = g.sample_symmetric(r1);
    }
    CHECK(r1.counts.proposal_draws == static_cast<std::uint64_t>(n));
    CHECK(optscale::ks_distance(xs, optscale::normal_cdf) < 0.012);

    Rng r2(22);
    const auto c = ProposalFamily::cauchy();
    for (auto& x : xs) {
        x = c.sample_symmetric(r2);
    }
    CHECK(optscale::ks_distance(xs, oracles::cauchy_cdf) < 0.012);

    Rng r3(23);
    const auto t5 = ProposalFamily::student_t(5);
    for (auto& x : xs) {
        x = t5.sample_symmetric(r3);
    }
    CHECK(optscale::ks_distance(
              xs, [](double x) { return oracles::student_t_cdf(x, 5); }) <
          0.012);

    Rng r4(24);
    const auto u = ProposalFamily::uniform_sym();
    for (auto& x : xs) {
        x = u.sample_symmetric(r4);
        REQUIRE(x > -1.0);
        REQUIRE(x < 1.0);
    }
    CHECK(optscale::ks_distance(
              xs, [](double x) { return 0.5 * (x + 1.0); }) < 0.012);
}

TEST_CASE("student t constructor validates nu") {
    CHECK_THROWS_AS((void)ProposalFamily::student_t(0),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)ProposalFamily::student_t(-3),
                    std::invalid_argument);
}

TEST_CASE("oracle self-check: incomplete beta and t cdf") {
    CHECK(oracles::betainc(1.5, 0.5, 0.75) ==
          doctest::Approx(0.3910022189557705).epsilon(1e-12));
    CHECK(oracles::student_t_cdf(1.0, 1) ==
          doctest::Approx(0.75).epsilon(1e-12));
    CHECK(oracles::student_t_cdf(-0.7, 2) ==
          doctest::Approx(0.2781965123164327).epsilon(1e-12));
    CHECK(oracles::student_t_cdf(1.0, 3) ==
          doctest::Approx(0.8044988905221148).epsilon(1e-12));
    CHECK(oracles::student_t_cdf(2.5, 5) ==
          doctest::Approx(0.9727549503288119).epsilon(1e-12));
}

} // TEST_SUITE
