// SPDX-License-Identifier: Apache-2.0
//
// isac-game: Stackelberg defense simulator for RIS-assisted ISAC links
// Copyright (C) 2026 The isac-game Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------


#include "isac/aoi.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

using namespace isac;
using Catch::Approx;

TEST_CASE("closed-form AAoI", "[aoi]")
{
    CHECK(aaoi_mm1({0.5, 1.0}) == Approx(3.5).epsilon(1e-15));
    // Age is measured in units of 1/gamma, so scaling both rates divides it.
    for (double c : {0.01, 3.0, 1e8})
        CHECK(aaoi_mm1({0.5 * c, c}) == Approx(3.5 / c).epsilon(1e-13));
    CHECK(aaoi_mm1({1.0, 1e6}) == Approx(1.0).epsilon(1e-5));

    CHECK_THROWS_AS(aaoi_mm1({1.0, 1.0}), std::domain_error);
    CHECK_THROWS_AS(aaoi_mm1({0.0, 1.0}), std::domain_error);
    CHECK_THROWS_AS(aaoi_mm1({2.0, 1.0}), std::domain_error);
}

TEST_CASE("AAoI shape", "[aoi]")
{
    SECTION("decreasing in the service rate")
    {
        double prev = aaoi_mm1({1.0, 1.01});
        for (double g = 1.1; g < 50.0; g *= 1.1)
        {
            const double a = aaoi_mm1({1.0, g});
            CHECK(a < prev);
            prev = a;
        }
    }
    SECTION("interior minimizer in the load")
    {
        double best = 1e300, rho_best = 0.0;
        for (int k = 1; k < 10000; ++k)
        {
            const double rho = k / 10000.0;
            const double a = aaoi_mm1({rho, 1.0});
            if (a < best)
            {
                best = a;
                rho_best = rho;
            }
        }
        CHECK(rho_best == Approx(0.53).margin(0.01));
        CHECK(best < aaoi_mm1({0.1, 1.0}));
        CHECK(best < aaoi_mm1({0.9, 1.0}));
    }
}

TEST_CASE("simulation converges to the closed form", "[aoi]")
{
    Rng rng(21);
    const QueueParams mid{0.5, 1.0};
    CHECK(simulate_mm1_aaoi(mid, 1000000, rng) == Approx(aaoi_mm1(mid)).epsilon(0.02));
    const QueueParams busy{0.75, 1.0};
    CHECK(simulate_mm1_aaoi(busy, 1000000, rng) == Approx(aaoi_mm1(busy)).epsilon(0.03));
    CHECK_THROWS_AS(simulate_mm1_aaoi(mid, 0, rng), std::invalid_argument);
}

TEST_CASE("deterministic stream without queueing", "[aoi]")
{
    // Every update waits zero and spends b/2 in service.
    const double b = 0.4;
    const std::size_t n = 100;
    const AoiTrace t = run_fcfs(std::vector<double>(n, b), std::vector<double>(n, b / 2));
    const double area = n * b * b + b * b / 8;
    CHECK(t.trapezoid_area() == Approx(area).epsilon(1e-12));
    CHECK(t.horizon() == Approx(n * b + b / 2).epsilon(1e-12));
    CHECK(t.average_age() == Approx(area / (n * b + b / 2)).epsilon(1e-12));
}

TEST_CASE("trapezoid decomposition matches the sawtooth integral", "[aoi]")
{
    Rng rng(22);
    std::exponential_distribution<double> arr(0.7), srv(1.0);
    std::vector<double> a(5000), s(5000);
    for (std::size_t i = 0; i < a.size(); ++i)
    {
        a[i] = arr(rng);
        s[i] = srv(rng);
    }
    const AoiTrace t = run_fcfs(a, s);
    CHECK(std::abs(t.trapezoid_area() - t.sawtooth_area()) <= 1e-9 * t.sawtooth_area());
}

TEST_CASE("trace order checks", "[aoi]")
{
    AoiTrace t;
    CHECK_THROWS_AS(t.push(2.0, 1.0), std::invalid_argument);
    t.push(1.0, 3.0);
    CHECK_THROWS_AS(t.push(2.0, 2.5), std::invalid_argument);
    CHECK_THROWS_AS(run_fcfs({1.0}, {}), std::invalid_argument);
}

TEST_CASE("cross moments", "[aoi]")
{
    const QueueParams q{0.5, 1.0};
    CHECK(cross_moment_ub(q) == Approx(1.0).epsilon(1e-15));
    Rng rng(23);
    const CrossMoments m = estimate_cross_moment(q, 1000000, rng);
    CHECK(m.ub == Approx(cross_moment_ub(q)).epsilon(0.05));
    CHECK(m.tb == Approx(m.ub + m.ob).epsilon(1e-12));
    // Service is independent of the preceding gap.
    CHECK(m.ob == Approx(m.mean_b * m.mean_o).epsilon(0.02));
    CHECK(m.mean_b == Approx(2.0).epsilon(0.01));
    CHECK_THROWS_AS(cross_moment_ub({1.0, 1.0}), std::domain_error);
}
