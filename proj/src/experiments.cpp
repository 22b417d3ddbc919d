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

#include "isac/aoi.hpp"
#include "isac/channel.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cerrno>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <tuple>

namespace isac
{
    namespace
    {
        std::string fmt_double(double v)
        {
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.17g", v);
            return buf;
        }

        // Shortest form that reads back to the same double.
        std::string fmt_short(double v)
        {
            char buf[40];
            const auto res = std::to_chars(buf, buf + sizeof buf, v);
            return std::string(buf, res.ptr);
        }

        std::string trim(const std::string &s)
        {
            const auto b = s.find_first_not_of(" \t\r");
            if (b == std::string::npos)
                return "";
            const auto e = s.find_last_not_of(" \t\r");
            return s.substr(b, e - b + 1);
        }

        std::vector<std::string> split(const std::string &s, char sep)
        {
            std::vector<std::string> out;
            std::string cur;
            std::istringstream in(s);
            while (std::getline(in, cur, sep))
                out.push_back(cur);
            if (!s.empty() && s.back() == sep)
                out.emplace_back();
            return out;
        }

        double parse_double(const std::string &key, const std::string &text)
        {
            const std::string t = trim(text);
            char *end = nullptr;
            errno = 0;
            const double v = std::strtod(t.c_str(), &end);
            if (t.empty() || end != t.c_str() + t.size() || errno == ERANGE || !std::isfinite(v))
                throw std::invalid_argument(key + ": expected a finite number, got '" + text + "'");
            return v;
        }

        std::uint64_t parse_u64(const std::string &key, const std::string &text)
        {
            const std::string t = trim(text);
            char *end = nullptr;
            errno = 0;
            const unsigned long long v = std::strtoull(t.c_str(), &end, 10);
            if (t.empty() || t[0] == '-' || end != t.c_str() + t.size() || errno == ERANGE)
                throw std::invalid_argument(key + ": expected a non-negative integer, got '" + text + "'");
            return v;
        }

        Vec3 parse_vec3(const std::string &key, const std::string &text)
        {
            const std::vector<std::string> parts = split(text, ',');
            if (parts.size() != 3)
                throw std::invalid_argument(key + ": expected 'x, y, z', got '" + text + "'");
            return {parse_double(key, parts[0]), parse_double(key, parts[1]), parse_double(key, parts[2])};
        }

        std::string fmt_vec3(const Vec3 &v)
        {
            return fmt_short(v[0]) + ", " + fmt_short(v[1]) + ", " + fmt_short(v[2]);
        }

        struct Field
        {
            const char *key;
            std::function<std::string(const ScenarioConfig &)> get;
            std::function<void(ScenarioConfig &, const std::string &)> set;
        };

#define ISAC_DOUBLE(name, member)                                                                                    \
    Field                                                                                                            \
    {                                                                                                                \
        name, [](const ScenarioConfig &c) { return fmt_short(c.member); },                                          \
            [](ScenarioConfig &c, const std::string &v) { c.member = parse_double(name, v); }                        \
    }
#define ISAC_COUNT(name, member)                                                                                     \
    Field                                                                                                            \
    {                                                                                                                \
        name, [](const ScenarioConfig &c) { return std::to_string(c.member); },                                      \
            [](ScenarioConfig &c, const std::string &v) {                                                            \
                c.member = static_cast<decltype(c.member)>(parse_u64(name, v));                                      \
            }                                                                                                        \
    }
#define ISAC_VEC3(name, member)                                                                                      \
    Field                                                                                                            \
    {                                                                                                                \
        name, [](const ScenarioConfig &c) { return fmt_vec3(c.member); },                                            \
            [](ScenarioConfig &c, const std::string &v) { c.member = parse_vec3(name, v); }                          \
    }

        const std::vector<Field> &fields()
        {
            static const std::vector<Field> table = {
                ISAC_COUNT("M", scenario.M),
                ISAC_COUNT("N", scenario.N),
                ISAC_COUNT("P", scenario.P),
                ISAC_VEC3("bs_pos", scenario.geometry.bs_pos),
                ISAC_VEC3("ris_pos", scenario.geometry.ris_pos),
                ISAC_VEC3("target_pos", scenario.geometry.target_pos),
                ISAC_VEC3("user_center", scenario.geometry.user_center),
                ISAC_DOUBLE("r_user", scenario.geometry.r_user),
                ISAC_DOUBLE("carrier_freq", scenario.geometry.carrier_freq),
                ISAC_DOUBLE("beta1", scenario.path_loss.beta1),
                ISAC_DOUBLE("beta2", scenario.path_loss.beta2),
                ISAC_DOUBLE("beta3", scenario.path_loss.beta3),
                ISAC_DOUBLE("beta4", scenario.path_loss.beta4),
                ISAC_DOUBLE("r0", scenario.path_loss.r0),
                ISAC_DOUBLE("f0", scenario.path_loss.f0),
                ISAC_DOUBLE("radar_cross_section", scenario.radar_cross_section),
                Field{"rician_k",
                      [](const ScenarioConfig &c) {
                          return c.scenario.rician_k ? fmt_short(*c.scenario.rician_k) : std::string("none");
                      },
                      [](ScenarioConfig &c, const std::string &v) {
                          if (trim(v) == "none")
                              c.scenario.rician_k.reset();
                          else
                              c.scenario.rician_k = parse_double("rician_k", v);
                      }},
                ISAC_DOUBLE("corr_rho_bs", scenario.corr_rho_bs),
                ISAC_DOUBLE("corr_rho_ris", scenario.corr_rho_ris),
                ISAC_DOUBLE("epsilon", scenario.epsilon),
                ISAC_DOUBLE("eta", scenario.eta),
                ISAC_DOUBLE("P_trans", scenario.P_trans),
                ISAC_DOUBLE("power_split", scenario.power_split),
                ISAC_DOUBLE("sigma2_dbm_hz", scenario.sigma2_dbm_hz),
                ISAC_DOUBLE("sigma_y2_dbm_hz", scenario.sigma_y2_dbm_hz),
                ISAC_DOUBLE("sigma_r2_dbm_hz", scenario.sigma_r2_dbm_hz),
                ISAC_DOUBLE("g_max", scenario.g_max),
                Field{"phase_profile", [](const ScenarioConfig &c) { return to_string(c.scenario.phase_profile); },
                      [](ScenarioConfig &c, const std::string &v) {
                          c.scenario.phase_profile = phase_profile_from_string(trim(v));
                      }},
                ISAC_DOUBLE("L_pkt", scenario.L_pkt),
                ISAC_DOUBLE("zeta1", game.zeta1),
                ISAC_DOUBLE("zeta2", game.zeta2),
                ISAC_DOUBLE("cost_bs", game.cost_bs),
                ISAC_DOUBLE("cost_ris", game.cost_ris),
                ISAC_DOUBLE("cost_att", game.cost_att),
                ISAC_DOUBLE("sinr_threshold_db", game.sinr_threshold_db),
                ISAC_DOUBLE("rho_max", game.rho_max),
                Field{"sigma_att2_max",
                      [](const ScenarioConfig &c) {
                          return c.game.sigma_att2_max ? fmt_short(*c.game.sigma_att2_max) : std::string("auto");
                      },
                      [](ScenarioConfig &c, const std::string &v) {
                          if (trim(v) == "auto")
                              c.game.sigma_att2_max.reset();
                          else
                              c.game.sigma_att2_max = parse_double("sigma_att2_max", v);
                      }},
                ISAC_DOUBLE("aaoi_penalty_factor", game.aaoi_penalty_factor),
                Field{"attacker_mode", [](const ScenarioConfig &c) { return to_string(c.game.attacker_mode); },
                      [](ScenarioConfig &c, const std::string &v) {
                          c.game.attacker_mode = attacker_mode_from_string(trim(v));
                      }},
                ISAC_DOUBLE("eps_conv", solver.eps_conv),
                ISAC_COUNT("iter_max", solver.iter_max),
                ISAC_DOUBLE("gsspi_tol_rel", solver.tol_rel),
                ISAC_COUNT("gsspi_max_evals", solver.max_evals),
                ISAC_COUNT("gsspi_starts", solver.starts),
                ISAC_COUNT("ga_population", solver.ga.population),
                ISAC_COUNT("ga_generations", solver.ga.generations),
                ISAC_COUNT("ga_tournament", solver.ga.tournament),
                ISAC_DOUBLE("ga_crossover_rate", solver.ga.crossover_rate),
                ISAC_DOUBLE("ga_blend_alpha", solver.ga.blend_alpha),
                ISAC_DOUBLE("ga_mutation_scale", solver.ga.mutation_scale),
                ISAC_COUNT("seed", seed),
                ISAC_COUNT("n_trials", n_trials),
            };
            return table;
        }

#undef ISAC_DOUBLE
#undef ISAC_COUNT
#undef ISAC_VEC3

        ResultRow row_from_trace(const std::string &experiment, const std::string &param, double value,
                                 std::uint64_t seed, const EquilibriumTrace &t, double ms)
        {
            const TraceStep &s = t.last();
            ResultRow r;
            r.experiment = experiment;
            r.param = param;
            r.value = value;
            r.solver = t.solver;
            r.seed = seed;
            r.lambda = s.profile.lambda;
            r.g = s.profile.g;
            r.sigma_att2 = s.profile.sigma_att2;
            r.u_att = s.metrics.u_att;
            r.u_ris = s.metrics.u_ris;
            r.u_bs = s.metrics.u_bs;
            r.asinr = s.metrics.asinr;
            r.aaoi = s.metrics.aaoi;
            r.gamma_sense = s.metrics.gamma_sense;
            r.iters = t.iterations();
            r.converged = t.converged;
            r.ms = ms;
            return r;
        }

        EquilibriumTrace run_solver(const std::string &name, const Game &game, const SolverParams &sp,
                                    std::uint64_t seed)
        {
            if (name == "stackelberg")
                return solve_stackelberg_bi(game, sp);
            if (name == "nash")
                return solve_nash_br(game, sp);
            if (name == "average")
                return baseline_average(game);
            if (name == "random")
            {
                Rng rng(splitmix64(seed ^ 0x72616e646f6dULL));
                return baseline_random(game, rng);
            }
            if (name == "ga")
            {
                Rng rng(splitmix64(seed ^ 0x6761ULL));
                return baseline_ga(game, sp, rng);
            }
            throw std::invalid_argument("unknown solver '" + name + "'");
        }

        std::vector<ResultRow> run_grid(const std::string &experiment, const ScenarioConfig &cfg,
                                        const std::string &param, const std::vector<double> &values,
                                        const RunOptions &opt)
        {
            if (values.empty())
                throw std::invalid_argument("sweep: no values given for " + param);
            std::vector<ScenarioConfig> cells;
            for (double v : values)
            {
                ScenarioConfig c = cfg;
                apply_param(c, param, v);
                c.validate();
                cells.push_back(std::move(c));
            }
            for (const std::string &s : opt.solvers)
                if (s != "stackelberg" && s != "nash" && s != "average" && s != "random" && s != "ga")
                    throw std::invalid_argument("unknown solver '" + s + "'");

            const std::size_t n = values.size() * cfg.n_trials;
            std::vector<std::vector<ResultRow>> out(n);
            parallel_for(n, opt.jobs, [&](std::size_t task) {
                const std::size_t vi = task / cfg.n_trials;
                const std::uint64_t seed = trial_seed(cfg.seed, task % cfg.n_trials);
                const ScenarioConfig &c = cells[vi];
                Rng rng(seed);
                const Game game(c.scenario, c.game, sample_channel_set(c.scenario, rng));
                for (const std::string &s : opt.solvers)
                {
                    const auto t0 = std::chrono::steady_clock::now();
                    const EquilibriumTrace t = run_solver(s, game, c.solver, seed);
                    const double ms = opt.record_time
                                          ? std::chrono::duration<double, std::milli>(
                                                std::chrono::steady_clock::now() - t0)
                                                .count()
                                          : 0.0;
                    out[task].push_back(row_from_trace(experiment, param, values[vi], seed, t, ms));
                }
            });

            std::vector<ResultRow> rows;
            for (auto &v : out)
                for (auto &r : v)
                    rows.push_back(std::move(r));
            sort_rows(rows);
            return rows;
        }

    } // namespace

    void ScenarioConfig::validate() const
    {
        scenario.validate();
        game.validate();
        solver.validate();
        if (n_trials < 1)
            throw std::invalid_argument("n_trials: must be >= 1");
    }

    ScenarioConfig default_config()
    {
        return ScenarioConfig{};
    }

    ScenarioConfig parse_config(const std::string &text)
    {
        ScenarioConfig cfg = default_config();
        std::istringstream in(text);
        std::string line;
        std::size_t lineno = 0;
        while (std::getline(in, line))
        {
            ++lineno;
            const auto hash = line.find('#');
            if (hash != std::string::npos)
                line.erase(hash);
            line = trim(line);
            if (line.empty())
                continue;
            const auto eq = line.find('=');
            if (eq == std::string::npos)
                throw std::invalid_argument("line " + std::to_string(lineno) + ": expected 'key = value'");
            const std::string key = trim(line.substr(0, eq));
            const std::string value = trim(line.substr(eq + 1));
            const auto &table = fields();
            const auto it =
                std::find_if(table.begin(), table.end(), [&](const Field &f) { return key == f.key; });
            if (it == table.end())
                throw std::invalid_argument("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
            try
            {
                it->set(cfg, value);
            }
            catch (const std::invalid_argument &e)
            {
                throw std::invalid_argument("line " + std::to_string(lineno) + ": " + e.what());
            }
        }
        cfg.validate();
        return cfg;
    }

    ScenarioConfig load_config(const std::string &path)
    {
        std::ifstream in(path);
        if (!in)
            throw std::runtime_error("cannot read config file '" + path + "'");
        std::ostringstream ss;
        ss << in.rdbuf();
        return parse_config(ss.str());
    }

    std::string format_config(const ScenarioConfig &cfg)
    {
        std::string out;
        for (const Field &f : fields())
            out += std::string(f.key) + " = " + f.get(cfg) + "\n";
        return out;
    }

    std::string config_hash(const ScenarioConfig &cfg)
    {
        std::uint64_t h = 0xcbf29ce484222325ULL;
        for (unsigned char ch : format_config(cfg))
        {
            h ^= ch;
            h *= 0x100000001b3ULL;
        }
        char buf[17];
        std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
        return buf;
    }

    NominalPoint nominal_costs(const ScenarioConfig &cfg, std::size_t realizations)
    {
        if (realizations == 0)
            throw std::invalid_argument("nominal_costs: need at least one realization");
        std::vector<double> rates, sinrs;
        double g_mid = 0.0, sigma_mid = 0.0;
        for (std::size_t k = 0; k < realizations; ++k)
        {
            Rng rng(trial_seed(cfg.seed, k));
            const Game game(cfg.scenario, cfg.game, sample_channel_set(cfg.scenario, rng));
            g_mid = 0.5 * game.g_max();
            sigma_mid = 0.5 * game.sigma_att2_max();
            const PhysicalMetrics pm = game.physical(g_mid, sigma_mid);
            rates.push_back(pm.service_rate);
            sinrs.push_back(pm.asinr);
        }
        const auto median = [](std::vector<double> v) {
            std::sort(v.begin(), v.end());
            const std::size_t n = v.size();
            return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
        };

        NominalPoint np;
        np.service_rate = median(rates);
        const double lambda = 0.5 * cfg.game.rho_max * np.service_rate;
        const double aaoi = aaoi_mm1({lambda, np.service_rate});
        np.core = std::abs(-cfg.game.zeta1 * aaoi + cfg.game.zeta2 * median(sinrs));
        np.cost_bs = np.core / lambda;
        np.cost_ris = np.core / g_mid;
        np.cost_att = np.core / std::sqrt(sigma_mid);
        return np;
    }

    std::uint64_t splitmix64(std::uint64_t x) noexcept
    {
        x ^= x >> 30;
        x *= 0xbf58476d1ce4e5b9ULL;
        x ^= x >> 27;
        x *= 0x94d049bb133111ebULL;
        x ^= x >> 31;
        return x;
    }

    std::uint64_t trial_seed(std::uint64_t master, std::uint64_t k) noexcept
    {
        return splitmix64(master + (k + 1) * 0x9E3779B97F4A7C15ULL);
    }

    bool is_sweep_param(const std::string &name)
    {
        return name == "P" || name == "M" || name == "r_user" || name == "sigma_att2_max" || name == "epsilon";
    }

    void apply_param(ScenarioConfig &cfg, const std::string &name, double value)
    {
        const auto bad = [&](const char *why) {
            return std::invalid_argument("invalid value " + fmt_double(value) + " for " + name + ": " + why);
        };
        if (!std::isfinite(value))
            throw bad("not finite");
        if (name == "P" || name == "M")
        {
            if (value < 1.0 || value != std::floor(value) || value > 4096.0)
                throw bad("expected a positive integer");
            (name == "P" ? cfg.scenario.P : cfg.scenario.M) = static_cast<std::size_t>(value);
        }
        else if (name == "r_user")
        {
            if (!(value >= 0.0))
                throw bad("must be >= 0");
            cfg.scenario.geometry.r_user = value;
        }
        else if (name == "sigma_att2_max")
        {
            if (!(value >= 0.0))
                throw bad("must be >= 0");
            cfg.game.sigma_att2_max = value;
        }
        else if (name == "epsilon")
        {
            if (!(value >= 0.0 && value <= 1.0))
                throw bad("must lie in [0, 1]");
            cfg.scenario.epsilon = value;
        }
        else
        {
            throw std::invalid_argument("unknown sweep parameter '" + name +
                                        "' (expected P, M, r_user, sigma_att2_max or epsilon)");
        }
    }

    std::vector<ResultRow> run_convergence(const ScenarioConfig &cfg, const RunOptions &opt)
    {
        cfg.validate();
        const std::uint64_t seed = trial_seed(cfg.seed, 0);
        Rng rng(seed);
        const Game game(cfg.scenario, cfg.game, sample_channel_set(cfg.scenario, rng));
        const auto t0 = std::chrono::steady_clock::now();
        const EquilibriumTrace t = solve_stackelberg_bi(game, cfg.solver);
        const double ms =
            opt.record_time
                ? std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count()
                : 0.0;

        std::vector<ResultRow> rows;
        for (std::size_t k = 0; k < t.steps.size(); ++k)
        {
            EquilibriumTrace prefix;
            prefix.solver = t.solver;
            prefix.steps.assign(t.steps.begin(), t.steps.begin() + static_cast<std::ptrdiff_t>(k + 1));
            prefix.converged = t.steps[k].residual <= cfg.solver.eps_conv;
            rows.push_back(row_from_trace("converge", "iteration", static_cast<double>(k + 1), seed, prefix,
                                          k + 1 == t.steps.size() ? ms : 0.0));
        }
        return rows;
    }

    std::vector<ResultRow> run_sweep(const ScenarioConfig &cfg, const std::string &param,
                                     const std::vector<double> &values, const RunOptions &opt)
    {
        return run_grid("sweep", cfg, param, values, opt);
    }

    std::vector<ResultRow> run_compare(const ScenarioConfig &cfg, const std::string &param,
                                       const std::vector<double> &values, const RunOptions &opt)
    {
        RunOptions o = opt;
        o.solvers = {"stackelberg", "nash"};
        return run_grid("compare", cfg, param, values, o);
    }

    void sort_rows(std::vector<ResultRow> &rows)
    {
        const auto key = [](const ResultRow &r) {
            return std::tie(r.experiment, r.param, r.value, r.solver, r.seed, r.iters);
        };
        std::stable_sort(rows.begin(), rows.end(),
                         [&](const ResultRow &a, const ResultRow &b) { return key(a) < key(b); });
    }

    Stat mean_std(const std::vector<double> &xs)
    {
        Stat s;
        if (xs.empty())
            return s;
        double sum = 0.0;
        for (double x : xs)
            sum += x;
        s.mean = sum / static_cast<double>(xs.size());
        if (xs.size() > 1)
        {
            double ss = 0.0;
            for (double x : xs)
                ss += (x - s.mean) * (x - s.mean);
            s.std = std::sqrt(ss / static_cast<double>(xs.size() - 1));
        }
        return s;
    }

    std::vector<SummaryRow> summarize(const std::vector<ResultRow> &rows)
    {
        std::vector<ResultRow> sorted = rows;
        sort_rows(sorted);
        std::vector<SummaryRow> out;
        std::size_t i = 0;
        while (i < sorted.size())
        {
            std::size_t j = i;
            const auto same = [&](const ResultRow &a, const ResultRow &b) {
                return a.experiment == b.experiment && a.param == b.param && a.value == b.value &&
                       a.solver == b.solver;
            };
            std::vector<double> ua, ur, ub, as, ao;
            while (j < sorted.size() && same(sorted[i], sorted[j]))
            {
                ua.push_back(sorted[j].u_att);
                ur.push_back(sorted[j].u_ris);
                ub.push_back(sorted[j].u_bs);
                as.push_back(sorted[j].asinr);
                ao.push_back(sorted[j].aaoi);
                ++j;
            }
            SummaryRow s;
            s.experiment = sorted[i].experiment;
            s.param = sorted[i].param;
            s.value = sorted[i].value;
            s.solver = sorted[i].solver;
            s.count = j - i;
            s.u_att = mean_std(ua);
            s.u_ris = mean_std(ur);
            s.u_bs = mean_std(ub);
            s.asinr = mean_std(as);
            s.aaoi = mean_std(ao);
            out.push_back(s);
            i = j;
        }
        return out;
    }

    const std::string &csv_header()
    {
        static const std::string h = "experiment,param,value,solver,seed,lambda,g,sigma_att2,u_att,u_ris,u_bs,asinr,"
                                     "aaoi,gamma_sense,iters,converged,ms";
        return h;
    }

    std::string to_csv(const std::vector<ResultRow> &rows)
    {
        std::string out = csv_header() + "\n";
        for (const ResultRow &r : rows)
        {
            for (const std::string *s : {&r.experiment, &r.param, &r.solver})
                if (s->find_first_of(",\n\"") != std::string::npos)
                    throw std::invalid_argument("to_csv: field '" + *s + "' needs quoting");
            out += r.experiment + "," + r.param + "," + fmt_double(r.value) + "," + r.solver + "," +
                   std::to_string(r.seed);
            for (double v : {r.lambda, r.g, r.sigma_att2, r.u_att, r.u_ris, r.u_bs, r.asinr, r.aaoi, r.gamma_sense})
                out += "," + fmt_double(v);
            out += "," + std::to_string(r.iters) + "," + (r.converged ? "1" : "0") + "," + fmt_double(r.ms) + "\n";
        }
        return out;
    }

    std::vector<ResultRow> parse_csv(const std::string &text)
    {
        std::istringstream in(text);
        std::string line;
        if (!std::getline(in, line) || trim(line) != csv_header())
            throw std::invalid_argument("parse_csv: header does not match");
        std::vector<ResultRow> rows;
        std::size_t lineno = 1;
        while (std::getline(in, line))
        {
            ++lineno;
            if (trim(line).empty())
                continue;
            const std::vector<std::string> f = split(trim(line), ',');
            if (f.size() != 17)
                throw std::invalid_argument("parse_csv: line " + std::to_string(lineno) + " has " +
                                            std::to_string(f.size()) + " fields");
            ResultRow r;
            r.experiment = f[0];
            r.param = f[1];
            r.value = parse_double("value", f[2]);
            r.solver = f[3];
            r.seed = parse_u64("seed", f[4]);
            double *dst[] = {&r.lambda, &r.g,   &r.sigma_att2, &r.u_att,      &r.u_ris,
                             &r.u_bs,   &r.asinr, &r.aaoi,     &r.gamma_sense};
            for (std::size_t k = 0; k < 9; ++k)
                *dst[k] = parse_double(csv_header(), f[5 + k]);
            r.iters = static_cast<std::size_t>(parse_u64("iters", f[14]));
            if (f[15] != "0" && f[15] != "1")
                throw std::invalid_argument("parse_csv: converged must be 0 or 1");
            r.converged = f[15] == "1";
            r.ms = parse_double("ms", f[16]);
            rows.push_back(r);
        }
        return rows;
    }

    std::string to_json(const std::vector<ResultRow> &rows, const std::string &hash)
    {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const ResultRow &r : rows)
        {
            nlohmann::ordered_json j;
            j["experiment"] = r.experiment;
            j["param"] = r.param;
            j["value"] = r.value;
            j["solver"] = r.solver;
            j["seed"] = r.seed;
            j["lambda"] = r.lambda;
            j["g"] = r.g;
            j["sigma_att2"] = r.sigma_att2;
            j["u_att"] = r.u_att;
            j["u_ris"] = r.u_ris;
            j["u_bs"] = r.u_bs;
            j["asinr"] = r.asinr;
            j["aaoi"] = r.aaoi;
            j["gamma_sense"] = r.gamma_sense;
            j["iters"] = r.iters;
            j["converged"] = r.converged;
            j["ms"] = r.ms;
            j["config_hash"] = hash;
            arr.push_back(std::move(j));
        }
        return arr.dump(1) + "\n";
    }

    std::string summary_csv(const std::vector<SummaryRow> &rows)
    {
        std::string out = "experiment,param,value,solver,count";
        for (const char *m : {"u_att", "u_ris", "u_bs", "asinr", "aaoi"})
            out += std::string(",") + m + "_mean," + m + "_std";
        out += "\n";
        for (const SummaryRow &s : rows)
        {
            out += s.experiment + "," + s.param + "," + fmt_double(s.value) + "," + s.solver + "," +
                   std::to_string(s.count);
            for (const Stat *st : {&s.u_att, &s.u_ris, &s.u_bs, &s.asinr, &s.aaoi})
                out += "," + fmt_double(st->mean) + "," + fmt_double(st->std);
            out += "\n";
        }
        return out;
    }

    std::string summary_json(const std::vector<SummaryRow> &rows, const std::string &hash)
    {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const SummaryRow &s : rows)
        {
            nlohmann::ordered_json j;
            j["experiment"] = s.experiment;
            j["param"] = s.param;
            j["value"] = s.value;
            j["solver"] = s.solver;
            j["count"] = s.count;
            const std::pair<const char *, const Stat *> stats[] = {
                {"u_att", &s.u_att}, {"u_ris", &s.u_ris}, {"u_bs", &s.u_bs}, {"asinr", &s.asinr}, {"aaoi", &s.aaoi}};
            for (const auto &[name, st] : stats)
                j[name] = {{"mean", st->mean}, {"std", st->std}};
            j["config_hash"] = hash;
            arr.push_back(std::move(j));
        }
        return arr.dump(1) + "\n";
    }

    void emit_results(const std::vector<ResultRow> &rows, const std::string &format, const std::string &path,
                      const std::string &hash)
    {
        if (rows.empty())
            throw std::invalid_argument("emit_results: no rows to write");
        if (format != "csv" && format != "json")
            throw std::invalid_argument("emit_results: format must be csv or json, got '" + format + "'");

        const auto write = [](const std::string &p, const std::string &body) {
            std::ofstream out(p, std::ios::binary | std::ios::trunc);
            if (!out)
                throw std::runtime_error("cannot write '" + p + "'");
            out << body;
            if (!out)
                throw std::runtime_error("write failed for '" + p + "'");
        };

        std::vector<ResultRow> sorted = rows;
        sort_rows(sorted);
        const std::vector<SummaryRow> summary = summarize(sorted);
        if (format == "csv")
        {
            write(path, to_csv(sorted));
            write(path + ".summary.csv", summary_csv(summary));
            write(path + ".hash", hash + "\n");
        }
        else
        {
            write(path, to_json(sorted, hash));
            write(path + ".summary.json", summary_json(summary, hash));
        }
    }

    void parallel_for(std::size_t n, std::size_t jobs, const std::function<void(std::size_t)> &task)
    {
        const std::size_t workers = std::max<std::size_t>(1, std::min(jobs, n));
        std::vector<std::exception_ptr> errors(n);
        std::atomic<std::size_t> next{0};
        const auto worker = [&] {
            for (std::size_t i = next++; i < n; i = next++)
            {
                try
                {
                    task(i);
                }
                catch (...)
                {
                    errors[i] = std::current_exception();
                }
            }
        };
        if (workers == 1)
            worker();
        else
        {
            std::vector<std::thread> pool;
            for (std::size_t w = 0; w < workers; ++w)
                pool.emplace_back(worker);
            for (std::thread &t : pool)
                t.join();
        }
        for (const std::exception_ptr &e : errors)
            if (e)
                std::rethrow_exception(e);
    }

} // namespace isac
