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


#include "support.hpp"

#include "isac/solvers.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>

using namespace isac;
using Catch::Approx;
using isac::test::make_game;

namespace
{
    GameConfig lenient()
    {
        GameConfig c;
        c.sinr_threshold_db = -300.0;
        return c;
    }

    // RIS utility on a gain grid, each point scored at the BS's best response.
    double u_ris_nested_grid(const Game &game, double sigma, std::size_t n)
    {
        double best = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < n; ++i)
        {
            const double g = game.g_max() * static_cast<double>(i) / static_cast<double>(n - 1);
            const PhysicalMetrics phys = game.physical(g, sigma);
            const BsResponse bs = best_response_bs(game, phys, g, sigma, {});
            best = std::max(best, game.assemble({bs.lambda, g, sigma}, phys).u_ris);
        }
        return best;
    }
} // namespace

TEST_CASE("BS response without service capacity", "[solvers]")
{
    const Game game = make_game(71);
    const BsResponse r = best_response_bs(game, 0.0, 0.0, {});
    CHECK(r.degenerate);
    CHECK(r.lambda == 0.0);
    CHECK(std::isfinite(r.utility));
}

TEST_CASE("BS response against a fine grid", "[solvers]")
{
    const Game game = make_game(72);
    for (double g : {0.25, 0.6, 1.0})
    {
        const PhysicalMetrics phys = game.physical(g, 0.3 * game.sigma_att2_max());
        const auto u = [&](double l) { return game.assemble({l, g, 0.3 * game.sigma_att2_max()}, phys).u_bs; };
        const double lmax = game.lambda_max(phys.service_rate);
        const ScalarResult grid = grid_maximize(u, 0.0, lmax, 100001);
        const BsResponse r = best_response_bs(game, phys, g, 0.3 * game.sigma_att2_max(), {});
        CHECK(std::abs(r.lambda - grid.x_star) <= 2.0 * lmax / 100000.0);
        CHECK(r.utility >= grid.f_star - 1e-9 * std::abs(grid.f_star));
    }
}

TEST_CASE("BS update rate falls with its cost", "[solvers]")
{
    double prev = std::numeric_limits<double>::infinity();
    for (double cost : {0.0, 5.9e15, 5.9e16, 5.9e17})
    {
        GameConfig c;
        c.cost_bs = cost;
        const Game game = make_game(73, {}, c);
        const double lambda = best_response_bs(game, 0.5, 0.0, {}).lambda;
        CHECK(lambda <= prev * (1.0 + 1e-6));
        prev = lambda;
    }
}

TEST_CASE("RIS response feasibility flag", "[solvers]")
{
    CHECK(best_response_ris(make_game(74, {}, lenient()), 0.0, {}).feasible);
    GameConfig hard;
    hard.sinr_threshold_db = 300.0;
    const RisResponse r = best_response_ris(make_game(74, {}, hard), 0.0, {});
    CHECK_FALSE(r.feasible);
    CHECK(r.g >= 0.0);
    CHECK(r.g <= 1.0);
}

TEST_CASE("nested RIS response against a gain grid", "[solvers]")
{
    const Game game = make_game(75, {}, lenient());
    for (double f : {0.0, 0.5})
    {
        const double sigma = f * game.sigma_att2_max();
        const double oracle = u_ris_nested_grid(game, sigma, 2001);
        const RisResponse r = best_response_ris(game, sigma, {});
        CHECK(r.utility >= oracle - 1e-6 * std::abs(oracle));
    }
}

TEST_CASE("attacker response", "[solvers]")
{
    SECTION("prohibitive cost keeps the attacker silent")
    {
        GameConfig c = lenient();
        c.cost_att = 1e30;
        CHECK(best_response_attacker(make_game(76, {}, c), {}).sigma_att2 == 0.0);
    }
    SECTION("free attack against a grid")
    {
        GameConfig c = lenient();
        c.cost_att = 0.0;
        const Game game = make_game(77, {}, c);
        const SolverParams p;
        const auto u_att = [&](double sigma) {
            const RisResponse ris = best_response_ris(game, sigma, p);
            return game.evaluate({ris.lambda, ris.g, sigma}).u_att;
        };
        const ScalarResult grid = grid_maximize(u_att, 0.0, game.sigma_att2_max(), 100);
        const AttackerResponse r = best_response_attacker(game, p);
        // The nested responses carry their own tolerance, so u_att is only
        // resolved to a few parts in 1e5.
        CHECK(r.utility >= grid.f_star - 1e-4 * std::abs(grid.f_star));
        CHECK(r.utility >= u_att(0.0));
        CHECK(r.utility >= u_att(game.sigma_att2_max()));
        CHECK(r.utility == Approx(u_att(r.sigma_att2)).epsilon(1e-12));
    }
}

TEST_CASE("strict attacker falls back when no attack breaks the link", "[solvers]")
{
    GameConfig c = lenient();
    c.attacker_mode = AttackerMode::strict;
    const AttackerResponse r = best_response_attacker(make_game(78, {}, c), {});
    CHECK_FALSE(r.strict_satisfied);
    CHECK(r.ris_feasible);
}

TEST_CASE("backward induction", "[solvers]")
{
    const Game game = make_game(79);

    SECTION("loose tolerance stops after one sweep")
    {
        SolverParams p;
        p.eps_conv = std::numeric_limits<double>::infinity();
        const EquilibriumTrace t = solve_stackelberg_bi(game, p);
        CHECK(t.iterations() == 1);
        CHECK(t.converged);
    }
    SECTION("convergence and trace consistency")
    {
        const SolverParams p;
        const EquilibriumTrace t = solve_stackelberg_bi(game, p);
        CHECK(t.solver == "stackelberg");
        REQUIRE(t.converged);
        CHECK(t.last().residual <= p.eps_conv);
        CHECK(t.evals > 0);

        StrategyProfile prev = midpoint_profile(game);
        for (const TraceStep &s : t.steps)
        {
            CHECK_NOTHROW(game.check_profile(s.profile));
            CHECK(s.residual == strategy_change(game, prev, s.profile));
            const MetricsBundle m = game.evaluate(s.profile);
            CHECK(s.metrics.u_bs == m.u_bs);
            CHECK(s.metrics.u_att == m.u_att);
            prev = s.profile;
        }

        // One more sweep from the end point stays put.
        const StrategyProfile &x = t.last().profile;
        StrategyProfile next;
        next.lambda = best_response_bs(game, x.g, x.sigma_att2, p).lambda;
        next.g = best_response_ris(game, x.sigma_att2, p).g;
        next.sigma_att2 = best_response_attacker(game, p).sigma_att2;
        CHECK(strategy_change(game, x, next) <= p.eps_conv);
    }
    SECTION("deterministic")
    {
        const EquilibriumTrace a = solve_stackelberg_bi(game, {});
        const EquilibriumTrace b = solve_stackelberg_bi(game, {});
        REQUIRE(a.iterations() == b.iterations());
        CHECK(a.last().profile == b.last().profile);
    }
    SECTION("invalid parameters")
    {
        SolverParams p;
        p.iter_max = 0;
        CHECK_THROWS_AS(solve_stackelberg_bi(game, p), std::invalid_argument);
    }
}

TEST_CASE("simultaneous best responses", "[solvers]")
{
    GameConfig c;
    c.cost_att = 1e30;
    const Game game = make_game(80, {}, c);
    const EquilibriumTrace nash = solve_nash_br(game, {});
    const EquilibriumTrace bi = solve_stackelberg_bi(game, {});
    CHECK(nash.solver == "nash");
    for (const TraceStep &s : nash.steps)
        CHECK_NOTHROW(game.check_profile(s.profile));
    CHECK(nash.last().profile.sigma_att2 == 0.0);
    CHECK(bi.last().profile.sigma_att2 == 0.0);
}

TEST_CASE("baselines", "[solvers]")
{
    const Game game = make_game(81);

    const EquilibriumTrace avg = baseline_average(game);
    CHECK(avg.iterations() == 1);
    CHECK(avg.last().profile == midpoint_profile(game));
    CHECK(avg.last().profile.g == 0.5);

    Rng r1(5), r2(5);
    const StrategyProfile a = baseline_random(game, r1).last().profile;
    CHECK(a == baseline_random(game, r2).last().profile);
    Rng r3(6);
    for (int k = 0; k < 100; ++k)
        CHECK_NOTHROW(game.check_profile(baseline_random(game, r3).last().profile));

    SolverParams p;
    p.ga.population = 6;
    p.ga.generations = 3;
    Rng g1(9), g2(9);
    const EquilibriumTrace ga1 = baseline_ga(game, p, g1);
    const EquilibriumTrace ga2 = baseline_ga(game, p, g2);
    CHECK(ga1.last().profile == ga2.last().profile);
    CHECK_NOTHROW(game.check_profile(ga1.last().profile));
    CHECK(ga1.solver == "ga");

    p.ga.population = 2;
    p.ga.generations = 1;
    CHECK_NOTHROW(baseline_ga(game, p, g1));
    p.ga.population = 1;
    CHECK_THROWS_AS(baseline_ga(game, p, g1), std::invalid_argument);
}
