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


#include "isac/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace isac
{
    namespace
    {
        // Shift applied to an SINR-infeasible candidate; larger than any
        // utility difference reachable inside the boxes.
        double infeasibility_penalty(const Game &game)
        {
            const GameConfig &c = game.config();
            return 10.0 * (c.zeta1 * game.aaoi_penalty() + c.zeta2 * 1e6 + c.cost_ris * game.g_max() +
                           c.cost_att * std::sqrt(game.sigma_att2_max()) + 1.0);
        }

        struct Nested
        {
            RisResponse ris;
            double u_att = 0.0;
            bool strict_ok = true;
        };

        // Followers' response to sigma and the attacker's resulting utility.
        Nested anticipate(const Game &game, double sigma, const SolverParams &params)
        {
            Nested n;
            n.ris = best_response_ris(game, sigma, params);
            const PhysicalMetrics phys = game.physical(n.ris.g, sigma);
            const MetricsBundle mb = game.assemble({n.ris.lambda, n.ris.g, sigma}, phys);
            n.u_att = mb.u_att;
            n.strict_ok = !game.sinr_feasible(phys);
            ++n.ris.evals;
            return n;
        }

        TraceStep make_step(const Game &game, const StrategyProfile &s, double residual)
        {
            return {s, game.evaluate(s), residual};
        }

        EquilibriumTrace single(const Game &game, const char *name, const StrategyProfile &s, std::size_t evals)
        {
            EquilibriumTrace t;
            t.solver = name;
            t.steps.push_back(make_step(game, s, 0.0));
            t.converged = true;
            t.evals = evals + 1;
            return t;
        }

    } // namespace

    void GaParams::validate() const
    {
        if (population < 2)
            throw std::invalid_argument("ga.population: must be >= 2");
        if (generations < 1)
            throw std::invalid_argument("ga.generations: must be >= 1");
        if (tournament < 1)
            throw std::invalid_argument("ga.tournament: must be >= 1");
        if (!(crossover_rate >= 0.0 && crossover_rate <= 1.0))
            throw std::invalid_argument("ga.crossover_rate: must lie in [0, 1]");
        if (!(blend_alpha >= 0.0))
            throw std::invalid_argument("ga.blend_alpha: must be >= 0");
        if (!(mutation_scale >= 0.0))
            throw std::invalid_argument("ga.mutation_scale: must be >= 0");
    }

    ScalarSearchSpec SolverParams::search(double lo, double hi) const
    {
        ScalarSearchSpec s;
        s.lo = lo;
        s.hi = hi;
        if (hi > lo)
            s.tol_x = tol_rel * (hi - lo);
        s.max_evals = max_evals;
        s.starts = starts;
        return s;
    }

    void SolverParams::validate() const
    {
        if (!(tol_rel > 0.0 && tol_rel < 1.0))
            throw std::invalid_argument("tol_rel: must lie in (0, 1)");
        if (max_evals < 1)
            throw std::invalid_argument("max_evals: must be >= 1");
        if (starts < 1)
            throw std::invalid_argument("starts: must be >= 1");
        if (!(eps_conv > 0.0))
            throw std::invalid_argument("eps_conv: must be > 0");
        if (iter_max < 1)
            throw std::invalid_argument("iter_max: must be >= 1");
        ga.validate();
    }

    BsResponse best_response_bs(const Game &game, double g, double sigma_att2, const SolverParams &params)
    {
        return best_response_bs(game, game.physical(g, sigma_att2), g, sigma_att2, params);
    }

    BsResponse best_response_bs(const Game &game, const PhysicalMetrics &phys, double g, double sigma_att2,
                                const SolverParams &params)
    {
        BsResponse r;
        if (!(phys.service_rate > 0.0))
        {
            r.degenerate = true;
            r.lambda = 0.0;
            r.utility = game.assemble({0.0, g, sigma_att2}, phys).u_bs;
            r.evals = 1;
            return r;
        }

        const GameConfig &c = game.config();
        const double rate = phys.service_rate;
        const double base = c.zeta2 * phys.asinr;
        const auto u_bs = [&](double lambda) { return -c.zeta1 * game.aaoi(lambda, rate) + base - c.cost_bs * lambda; };

        const ScalarResult s = gsspi_maximize(u_bs, params.search(0.0, game.lambda_max(rate)));
        r.lambda = s.x_star;
        r.utility = s.f_star;
        r.evals = s.evals;
        return r;
    }

    RisResponse best_response_ris(const Game &game, double sigma_att2, const SolverParams &params)
    {
        const double penalty = infeasibility_penalty(game);
        std::size_t evals = 0;

        const auto u_ris = [&](double g) {
            const PhysicalMetrics phys = game.physical(g, sigma_att2);
            const BsResponse bs = best_response_bs(game, phys, g, sigma_att2, params);
            evals += bs.evals + 1;
            const double u = game.assemble({bs.lambda, g, sigma_att2}, phys).u_ris;
            return game.sinr_feasible(phys) ? u : u - penalty;
        };
        const ScalarResult s = gsspi_maximize(u_ris, params.search(0.0, game.g_max()));

        // When no g is feasible the penalty is a constant shift, so x_star is
        // the unconstrained argmax.
        const PhysicalMetrics phys = game.physical(s.x_star, sigma_att2);
        const BsResponse bs = best_response_bs(game, phys, s.x_star, sigma_att2, params);
        RisResponse r;
        r.g = s.x_star;
        r.lambda = bs.lambda;
        r.feasible = game.sinr_feasible(phys);
        r.utility = game.assemble({bs.lambda, s.x_star, sigma_att2}, phys).u_ris;
        r.evals = evals + bs.evals + 1;
        return r;
    }

    RisResponse best_response_ris_fixed(const Game &game, double lambda, double sigma_att2,
                                        const SolverParams &params)
    {
        const double penalty = infeasibility_penalty(game);
        const auto u_ris = [&](double g) {
            const PhysicalMetrics phys = game.physical(g, sigma_att2);
            const double u = game.assemble({lambda, g, sigma_att2}, phys).u_ris;
            return game.sinr_feasible(phys) ? u : u - penalty;
        };
        const ScalarResult s = gsspi_maximize(u_ris, params.search(0.0, game.g_max()));
        const PhysicalMetrics phys = game.physical(s.x_star, sigma_att2);

        RisResponse r;
        r.g = s.x_star;
        r.lambda = lambda;
        r.feasible = game.sinr_feasible(phys);
        r.utility = game.assemble({lambda, s.x_star, sigma_att2}, phys).u_ris;
        r.evals = s.evals + 1;
        return r;
    }

    AttackerResponse best_response_attacker(const Game &game, const SolverParams &params)
    {
        const bool strict = game.config().attacker_mode == AttackerMode::strict;
        const double penalty = infeasibility_penalty(game);
        std::size_t evals = 0;

        const auto search = [&](bool constrained) {
            const auto u_att = [&](double sigma) {
                const Nested n = anticipate(game, sigma, params);
                evals += n.ris.evals;
                return constrained && !n.strict_ok ? n.u_att - penalty : n.u_att;
            };
            return gsspi_maximize(u_att, params.search(0.0, game.sigma_att2_max()));
        };

        ScalarResult s = search(strict);
        Nested n = anticipate(game, s.x_star, params);
        evals += n.ris.evals;
        bool strict_ok = !strict || n.strict_ok;
        if (strict && !n.strict_ok)
        {
            // No attack pushes a user below threshold: fall back.
            s = search(false);
            n = anticipate(game, s.x_star, params);
            evals += n.ris.evals;
            strict_ok = false;
        }

        AttackerResponse r;
        r.sigma_att2 = s.x_star;
        r.g = n.ris.g;
        r.lambda = n.ris.lambda;
        r.utility = n.u_att;
        r.ris_feasible = n.ris.feasible;
        r.strict_satisfied = strict_ok;
        r.evals = evals;
        return r;
    }

    AttackerResponse best_response_attacker_fixed(const Game &game, double lambda, double g,
                                                  const SolverParams &params)
    {
        const bool strict = game.config().attacker_mode == AttackerMode::strict;
        const double penalty = infeasibility_penalty(game);

        const auto search = [&](bool constrained) {
            const auto u_att = [&](double sigma) {
                const PhysicalMetrics phys = game.physical(g, sigma);
                const double u = game.assemble({lambda, g, sigma}, phys).u_att;
                return constrained && game.sinr_feasible(phys) ? u - penalty : u;
            };
            return gsspi_maximize(u_att, params.search(0.0, game.sigma_att2_max()));
        };

        ScalarResult s = search(strict);
        std::size_t evals = s.evals;
        PhysicalMetrics phys = game.physical(g, s.x_star);
        bool strict_ok = !strict || !game.sinr_feasible(phys);
        if (!strict_ok)
        {
            s = search(false);
            evals += s.evals;
            phys = game.physical(g, s.x_star);
        }

        AttackerResponse r;
        r.sigma_att2 = s.x_star;
        r.g = g;
        r.lambda = lambda;
        r.utility = game.assemble({lambda, g, s.x_star}, phys).u_att;
        r.ris_feasible = game.sinr_feasible(phys);
        r.strict_satisfied = strict_ok;
        r.evals = evals + 1;
        return r;
    }

    const TraceStep &EquilibriumTrace::last() const
    {
        if (steps.empty())
            throw std::logic_error("EquilibriumTrace: no iterations recorded");
        return steps.back();
    }

    StrategyProfile midpoint_profile(const Game &game)
    {
        StrategyProfile s;
        s.g = 0.5 * game.g_max();
        s.sigma_att2 = 0.5 * game.sigma_att2_max();
        s.lambda = 0.5 * game.lambda_max(game.physical(s.g, s.sigma_att2).service_rate);
        return s;
    }

    double strategy_change(const Game &game, const StrategyProfile &a, const StrategyProfile &b)
    {
        const auto rel = [](double x, double y, double width) {
            const double d = std::abs(x - y);
            return width > 0.0 ? d / width : d;
        };
        const double lambda_width =
            std::max(game.lambda_max(game.physical(a.g, a.sigma_att2).service_rate),
                     game.lambda_max(game.physical(b.g, b.sigma_att2).service_rate));
        return std::max({rel(a.lambda, b.lambda, lambda_width), rel(a.g, b.g, game.g_max()),
                         rel(a.sigma_att2, b.sigma_att2, game.sigma_att2_max())});
    }

    EquilibriumTrace solve_stackelberg_bi(const Game &game, const SolverParams &params)
    {
        params.validate();
        EquilibriumTrace t;
        t.solver = "stackelberg";
        StrategyProfile cur = midpoint_profile(game);

        for (std::size_t k = 0; k < params.iter_max; ++k)
        {
            StrategyProfile next;
            const BsResponse bs = best_response_bs(game, cur.g, cur.sigma_att2, params);
            next.lambda = bs.lambda;
            const RisResponse ris = best_response_ris(game, cur.sigma_att2, params);
            next.g = ris.g;
            const AttackerResponse att = best_response_attacker(game, params);
            next.sigma_att2 = att.sigma_att2;
            t.evals += bs.evals + ris.evals + att.evals;

            const double residual = strategy_change(game, cur, next);
            t.steps.push_back(make_step(game, next, residual));
            cur = next;
            if (residual <= params.eps_conv)
            {
                t.converged = true;
                break;
            }
        }
        return t;
    }

    EquilibriumTrace solve_nash_br(const Game &game, const SolverParams &params)
    {
        params.validate();
        EquilibriumTrace t;
        t.solver = "nash";
        StrategyProfile cur = midpoint_profile(game);

        for (std::size_t k = 0; k < params.iter_max; ++k)
        {
            const BsResponse bs = best_response_bs(game, cur.g, cur.sigma_att2, params);
            const RisResponse ris = best_response_ris_fixed(game, cur.lambda, cur.sigma_att2, params);
            const AttackerResponse att = best_response_attacker_fixed(game, cur.lambda, cur.g, params);
            t.evals += bs.evals + ris.evals + att.evals;

            const StrategyProfile next{bs.lambda, ris.g, att.sigma_att2};
            const double residual = strategy_change(game, cur, next);
            t.steps.push_back(make_step(game, next, residual));
            cur = next;
            if (residual <= params.eps_conv)
            {
                t.converged = true;
                break;
            }
        }
        return t;
    }

    EquilibriumTrace baseline_average(const Game &game)
    {
        return single(game, "average", midpoint_profile(game), 0);
    }

    EquilibriumTrace baseline_random(const Game &game, Rng &rng)
    {
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        StrategyProfile s;
        s.g = game.g_max() * unit(rng);
        s.sigma_att2 = game.sigma_att2_max() * unit(rng);
        s.lambda = game.lambda_max(game.physical(s.g, s.sigma_att2).service_rate) * unit(rng);
        return single(game, "random", s, 0);
    }

    EquilibriumTrace baseline_ga(const Game &game, const SolverParams &params, Rng &rng)
    {
        params.validate();
        const GaParams &ga = params.ga;
        const double lo = 0.0, hi = game.sigma_att2_max();
        const double width = hi - lo;

        struct Individual
        {
            double x;
            double fitness;
        };

        std::size_t evals = 0;
        const auto fitness = [&](double sigma) {
            const Nested n = anticipate(game, sigma, params);
            evals += n.ris.evals;
            return n.u_att;
        };

        std::uniform_real_distribution<double> unit(0.0, 1.0);
        std::normal_distribution<double> gauss(0.0, 1.0);
        std::uniform_int_distribution<std::size_t> pick(0, ga.population - 1);

        std::vector<Individual> pop(ga.population);
        for (Individual &ind : pop)
            ind.x = lo + width * unit(rng);
        for (Individual &ind : pop)
            ind.fitness = fitness(ind.x);

        const auto better = [](const Individual &a, const Individual &b) {
            return a.fitness > b.fitness || (a.fitness == b.fitness && a.x < b.x);
        };
        Individual best = *std::min_element(pop.begin(), pop.end(), better);

        const auto tournament = [&]() -> const Individual & {
            const Individual *winner = &pop[pick(rng)];
            for (std::size_t j = 1; j < ga.tournament; ++j)
            {
                const Individual &c = pop[pick(rng)];
                if (better(c, *winner))
                    winner = &c;
            }
            return *winner;
        };

        for (std::size_t gen = 1; gen < ga.generations; ++gen)
        {
            std::vector<Individual> next;
            next.reserve(ga.population);
            next.push_back(best); // elitism
            while (next.size() < ga.population)
            {
                const double p1 = tournament().x;
                const double p2 = tournament().x;
                double child = p1;
                if (unit(rng) < ga.crossover_rate)
                {
                    const double u = -ga.blend_alpha + (1.0 + 2.0 * ga.blend_alpha) * unit(rng);
                    child = p1 + u * (p2 - p1);
                }
                child += ga.mutation_scale * width * gauss(rng);
                child = std::clamp(child, lo, hi);
                next.push_back({child, fitness(child)});
            }
            pop = std::move(next);
            for (const Individual &ind : pop)
                if (better(ind, best))
                    best = ind;
        }

        const Nested n = anticipate(game, best.x, params);
        evals += n.ris.evals;
        return single(game, "ga", {n.ris.lambda, n.ris.g, best.x}, evals);
    }

} // namespace isac
