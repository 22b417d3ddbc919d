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


#include "isac/experiments.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

using namespace isac;
using Catch::Approx;

namespace
{
    ScenarioConfig small_config()
    {
        ScenarioConfig c = default_config();
        c.scenario.P = 4;
        c.n_trials = 2;
        c.solver.ga.population = 4;
        c.solver.ga.generations = 2;
        return c;
    }

    std::string slurp(const std::filesystem::path &p)
    {
        std::ifstream in(p);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }
} // namespace

TEST_CASE("config text round trip", "[experiments]")
{
    ScenarioConfig c = default_config();
    c.scenario.P = 32;
    c.scenario.geometry.r_user = 7.25;
    c.game.sigma_att2_max = 1e-14;
    c.scenario.rician_k = 3.0;
    c.game.attacker_mode = AttackerMode::strict;
    c.seed = 99;
    const std::string text = format_config(c);
    const ScenarioConfig back = parse_config(text);
    CHECK(format_config(back) == text);
    CHECK(config_hash(back) == config_hash(c));
    CHECK(config_hash(c) != config_hash(default_config()));
    CHECK(config_hash(c).size() == 16);

    CHECK(text.find("beta2 = 32.4\n") != std::string::npos);
}

TEST_CASE("config parsing errors", "[experiments]")
{
    CHECK(parse_config("# only a comment\n\n").seed == default_config().seed);
    CHECK(parse_config("P = 8  # trailing comment\n").scenario.P == 8);
    CHECK_THROWS_WITH(parse_config("M = 4\nbogus = 1\n"), Catch::Matchers::ContainsSubstring("line 2") &&
                                                              Catch::Matchers::ContainsSubstring("bogus"));
    CHECK_THROWS_WITH(parse_config("r_user = ten\n"), Catch::Matchers::ContainsSubstring("r_user"));
    CHECK_THROWS_AS(parse_config("just text\n"), std::invalid_argument);
    CHECK_THROWS_AS(load_config("/nonexistent/isac.conf"), std::runtime_error);
}

TEST_CASE("defaults describe the reference scene", "[experiments]")
{
    const ScenarioConfig c = default_config();
    CHECK(c.scenario.M == 4);
    CHECK(c.scenario.N == 2);
    CHECK(c.scenario.P == 16);
    CHECK(c.scenario.geometry.ris_pos == Vec3{5.0, 10.0, 1.5});
    CHECK(c.scenario.geometry.target_pos == Vec3{0.0, 60.0, 1.5});
    CHECK(c.scenario.geometry.r_user == 10.0);
    CHECK(c.scenario.P_trans == 0.9);
    CHECK(c.scenario.epsilon == 0.1);
    CHECK(c.game.sinr_threshold_db == 5.0);
    CHECK(c.n_trials == 50);
    CHECK_NOTHROW(c.validate());
}

TEST_CASE("shipped costs match the calibration", "[experiments]")
{
    const NominalPoint n = nominal_costs(default_config(), 1000);
    const GameConfig g;
    CHECK(g.cost_bs == Approx(n.cost_bs).epsilon(0.05));
    CHECK(g.cost_ris == Approx(n.cost_ris).epsilon(0.05));
    CHECK(g.cost_att == Approx(n.cost_att).epsilon(0.05));
    CHECK_THROWS_AS(nominal_costs(default_config(), 0), std::invalid_argument);
}

TEST_CASE("trial seeds", "[experiments]")
{
    std::set<std::uint64_t> seen;
    for (std::uint64_t k = 0; k < 10000; ++k)
        seen.insert(trial_seed(1, k));
    CHECK(seen.size() == 10000);
    CHECK(trial_seed(1, 0) != trial_seed(2, 0));
    CHECK(trial_seed(7, 3) == trial_seed(7, 3));
}

TEST_CASE("sweep parameters", "[experiments]")
{
    ScenarioConfig c = default_config();
    apply_param(c, "P", 8);
    CHECK(c.scenario.P == 8);
    apply_param(c, "sigma_att2_max", 0.0);
    CHECK(c.game.sigma_att2_max == 0.0);
    CHECK_THROWS_WITH(apply_param(c, "P", 2.5), Catch::Matchers::ContainsSubstring("invalid value 2.5 for P"));
    CHECK_THROWS_AS(apply_param(c, "M", 0), std::invalid_argument);
    CHECK_THROWS_AS(apply_param(c, "epsilon", 1.5), std::invalid_argument);
    CHECK_THROWS_AS(apply_param(c, "r_user", -1.0), std::invalid_argument);
    CHECK_THROWS_AS(apply_param(c, "eta", 1.0), std::invalid_argument);
    CHECK(is_sweep_param("epsilon"));
    CHECK_FALSE(is_sweep_param("eta"));
}

TEST_CASE("sweep cardinality and determinism", "[experiments]")
{
    ScenarioConfig c = small_config();
    c.n_trials = 1;
    const std::vector<ResultRow> one = run_sweep(c, "r_user", {10.0});
    CHECK(one.size() == 5);
    std::set<std::string> names;
    for (const ResultRow &r : one)
    {
        names.insert(r.solver);
        CHECK(r.experiment == "sweep");
        CHECK(r.ms == 0.0);
    }
    CHECK(names.size() == 5);

    c.n_trials = 2;
    RunOptions serial, wide;
    wide.jobs = 8;
    const std::vector<ResultRow> a = run_sweep(c, "P", {4, 8}, serial);
    const std::vector<ResultRow> b = run_sweep(c, "P", {4, 8}, wide);
    CHECK(a.size() == 20);
    CHECK(a == b);
    CHECK(to_csv(a) == to_csv(b));

    CHECK_THROWS_AS(run_sweep(c, "P", {}), std::invalid_argument);
    RunOptions bad;
    bad.solvers = {"stackelberg", "oracle"};
    CHECK_THROWS_AS(run_sweep(c, "P", {4}, bad), std::invalid_argument);
}

TEST_CASE("comparison runs both game solutions", "[experiments]")
{
    ScenarioConfig c = small_config();
    c.n_trials = 1;
    const std::vector<ResultRow> rows = run_compare(c, "r_user", {5.0, 20.0});
    CHECK(rows.size() == 4);
    for (const ResultRow &r : rows)
    {
        CHECK(r.experiment == "compare");
        CHECK((r.solver == "stackelberg" || r.solver == "nash"));
    }
}

TEST_CASE("convergence trace", "[experiments]")
{
    ScenarioConfig c = small_config();
    const std::vector<ResultRow> rows = run_convergence(c);
    REQUIRE_FALSE(rows.empty());
    for (std::size_t k = 0; k < rows.size(); ++k)
    {
        CHECK(rows[k].param == "iteration");
        CHECK(rows[k].value == static_cast<double>(k + 1));
    }
    CHECK(rows.back().converged);

    c.solver.eps_conv = std::numeric_limits<double>::infinity();
    CHECK(run_convergence(c).size() == 1);
}

TEST_CASE("CSV output", "[experiments]")
{
    CHECK(csv_header() ==
          "experiment,param,value,solver,seed,lambda,g,sigma_att2,u_att,u_ris,u_bs,asinr,aaoi,gamma_sense,iters,"
          "converged,ms");
    ScenarioConfig c = small_config();
    c.n_trials = 1;
    const std::vector<ResultRow> rows = run_sweep(c, "epsilon", {0.1});
    const std::string csv = to_csv(rows);
    CHECK(parse_csv(csv) == rows);
    CHECK_THROWS_AS(parse_csv("a,b\n"), std::invalid_argument);

    const std::filesystem::path dir = std::filesystem::temp_directory_path() / "isac_csv_test";
    std::filesystem::create_directories(dir);
    const std::string out = (dir / "rows.csv").string();
    emit_results(rows, "csv", out, config_hash(c));
    CHECK(slurp(out) == csv);
    CHECK(slurp(out + ".hash").find(config_hash(c)) != std::string::npos);
    CHECK(std::filesystem::exists(out + ".summary.csv"));
    emit_results(rows, "json", (dir / "rows.json").string(), config_hash(c));
    CHECK(slurp(dir / "rows.json").find(config_hash(c)) != std::string::npos);

    CHECK_THROWS_AS(emit_results({}, "csv", out, "x"), std::invalid_argument);
    CHECK_THROWS_AS(emit_results(rows, "xml", out, "x"), std::invalid_argument);
    CHECK_THROWS_AS(emit_results(rows, "csv", "/nonexistent/dir/out.csv", "x"), std::runtime_error);
    std::filesystem::remove_all(dir);
}

TEST_CASE("summaries", "[experiments]")
{
    const Stat s = mean_std({1.0, 2.0, 3.0, 4.0});
    CHECK(s.mean == 2.5);
    CHECK(s.std == Approx(std::sqrt(5.0 / 3.0)).epsilon(1e-15));
    CHECK(mean_std({3.0}).std == 0.0);

    ResultRow a;
    a.experiment = "sweep";
    a.param = "P";
    a.value = 8;
    a.solver = "nash";
    a.u_bs = 1.0;
    ResultRow b = a;
    b.seed = 2;
    b.u_bs = 3.0;
    const std::vector<SummaryRow> sum = summarize({a, b});
    REQUIRE(sum.size() == 1);
    CHECK(sum[0].count == 2);
    CHECK(sum[0].u_bs.mean == 2.0);
}

TEST_CASE("parallel_for", "[experiments]")
{
    std::vector<int> hits(1000, 0);
    parallel_for(hits.size(), 4, [&](std::size_t i) { hits[i] += 1; });
    CHECK(std::count(hits.begin(), hits.end(), 1) == 1000);
    CHECK_THROWS_AS(parallel_for(10, 3,
                                 [](std::size_t i) {
                                     if (i == 7)
                                         throw std::runtime_error("boom");
                                 }),
                    std::runtime_error);
}
