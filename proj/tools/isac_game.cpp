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

#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace
{
    std::vector<double> parse_values(const std::string &param, const std::string &csv)
    {
        std::vector<double> out;
        std::size_t start = 0;
        while (start <= csv.size())
        {
            const std::size_t comma = csv.find(',', start);
            const std::string item = csv.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
            std::size_t used = 0;
            double v = 0.0;
            try
            {
                v = std::stod(item, &used);
            }
            catch (const std::exception &)
            {
                used = 0;
            }
            if (used == 0 || item.find_first_not_of(" \t", used) != std::string::npos)
                throw std::invalid_argument("invalid value '" + item + "' for " + param);
            out.push_back(v);
            if (comma == std::string::npos)
                break;
            start = comma + 1;
        }
        return out;
    }

    void write_stdout(const std::vector<isac::ResultRow> &rows, const std::string &format, const std::string &hash)
    {
        std::cout << (format == "json" ? isac::to_json(rows, hash) : isac::to_csv(rows));
    }

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Stackelberg defense simulator for RIS-assisted ISAC links"};
    app.require_subcommand(1);

    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> trials;
    std::string param;
    std::string values;
    std::string out;
    std::string format = "csv";
    std::size_t jobs = 1;
    std::string attacker_mode;
    bool record_time = false;
    std::vector<std::string> solvers;

    app.add_option("--config", config_path, "key = value config file; omitted keys keep their defaults")
        ->check(CLI::ExistingFile);
    app.add_option("--seed", seed, "master seed");
    app.add_option("--trials", trials, "channel realizations per sweep point")->check(CLI::PositiveNumber);
    app.add_option("--param", param, "sweep parameter: P, M, r_user, sigma_att2_max, epsilon");
    app.add_option("--values", values, "comma-separated sweep values");
    app.add_option("--out", out, "output file; stdout when omitted");
    app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
    app.add_option("--attacker-mode", attacker_mode, "unconstrained or strict")
        ->check(CLI::IsMember({"unconstrained", "strict"}));
    app.add_flag("--record-time", record_time, "fill the ms column with wall time");
    app.add_option("--solvers", solvers, "subset of stackelberg,nash,average,random,ga for sweep")->delimiter(',');

    CLI::App *converge = app.add_subcommand("converge", "per-iteration trace of backward induction");
    CLI::App *sweep = app.add_subcommand("sweep", "all solvers over one swept parameter");
    CLI::App *compare = app.add_subcommand("compare", "Stackelberg against Nash (default: over r_user)");
    CLI::App *print = app.add_subcommand("print-config", "print the fully resolved configuration");
    for (CLI::App *sub : {converge, sweep, compare, print})
        sub->fallthrough();

    CLI11_PARSE(app, argc, argv);

    try
    {
        isac::ScenarioConfig cfg = config_path.empty() ? isac::default_config() : isac::load_config(config_path);
        if (seed)
            cfg.seed = *seed;
        if (trials)
            cfg.n_trials = *trials;
        if (!attacker_mode.empty())
            cfg.game.attacker_mode = isac::attacker_mode_from_string(attacker_mode);
        cfg.validate();

        if (*print)
        {
            const std::string text = isac::format_config(cfg);
            if (out.empty())
                std::cout << text;
            else
            {
                std::FILE *f = std::fopen(out.c_str(), "wb");
                if (!f || std::fwrite(text.data(), 1, text.size(), f) != text.size() || std::fclose(f) != 0)
                    throw std::runtime_error("cannot write '" + out + "'");
            }
            return 0;
        }

        isac::RunOptions opt;
        opt.jobs = jobs;
        opt.record_time = record_time;
        if (!solvers.empty())
            opt.solvers = solvers;

        std::vector<isac::ResultRow> rows;
        if (*converge)
            rows = isac::run_convergence(cfg, opt);
        else if (*sweep)
        {
            if (param.empty() || values.empty())
                throw std::invalid_argument("sweep needs --param and --values");
            if (!isac::is_sweep_param(param))
                throw std::invalid_argument("unknown sweep parameter '" + param + "'");
            rows = isac::run_sweep(cfg, param, parse_values(param, values), opt);
        }
        else
        {
            const std::string p = param.empty() ? "r_user" : param;
            if (!isac::is_sweep_param(p))
                throw std::invalid_argument("unknown sweep parameter '" + p + "'");
            rows = isac::run_compare(cfg, p, parse_values(p, values.empty() ? "5,10,20" : values), opt);
        }

        const std::string hash = isac::config_hash(cfg);
        if (out.empty())
            write_stdout(rows, format, hash);
        else
            isac::emit_results(rows, format, out, hash);
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
