// Copyright 2026 The lossy-gbs Authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// lgbs: batch front end for the lossy GBS probability estimator.

#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "commands.hpp"

namespace {

using lgbs::cli::RunConfig;
using Command = std::function<nlohmann::json(const RunConfig &, std::ostream &, std::ostream &)>;

struct Flags {
    std::string config;
    std::optional<double> alpha;
    std::optional<double> loss_s2;
    std::optional<double> h;
    std::optional<int> order;
    std::optional<std::size_t> samples;
    std::optional<std::uint64_t> seed;
    std::optional<unsigned> workers;
    std::optional<std::string> out;
    std::optional<std::string> unitary;
    std::optional<std::uint64_t> haar_seed;
    std::optional<std::size_t> modes;
    std::vector<std::string> patterns;
    std::optional<unsigned> photons;
    std::vector<std::size_t> schedule;
    std::vector<std::size_t> modes_list;
    std::vector<unsigned> photons_list;
    std::optional<unsigned> repetitions;
};

void add_flags(CLI::App &sub, Flags &f) {
    sub.add_option("--config", f.config, "JSON config file; flags override its fields");
    sub.add_option("--alpha", f.alpha, "squeezing amplitude alpha = tanh r, 0 <= alpha < 1");
    sub.add_option("--loss-s2", f.loss_s2, "loss level s^2 (transmission c^2 = 1 - s^2)");
    sub.add_option("--h-override", f.h, "override Cov(chi, chi~) (default: epsilon-optimal)");
    sub.add_option("--order", f.order, "expansion order: 0, 2 or 4");
    sub.add_option("--samples", f.samples, "Monte Carlo samples per pattern");
    sub.add_option("--seed", f.seed, "RNG seed (LGBS_SEED overrides the config file)");
    sub.add_option("--workers", f.workers, "worker threads (0 = all cores)");
    sub.add_option("--out", f.out, "output path (default: stdout)");
    sub.add_option("--unitary", f.unitary, "unitary JSON file");
    sub.add_option("--haar-seed", f.haar_seed, "seed for a Haar-random unitary");
    sub.add_option("--modes", f.modes, "number of modes N for a Haar-random unitary");
    sub.add_option("--pattern", f.patterns, "output pattern, e.g. 1,1,0 (repeatable)");
    sub.add_option("--photons", f.photons, "use all patterns with this many photons");
    sub.add_option("--schedule", f.schedule, "convergence: sample counts K")->delimiter(',');
    sub.add_option("--modes-list", f.modes_list, "convergence/bench: N values")->delimiter(',');
    sub.add_option("--photons-list", f.photons_list, "bench: M values")->delimiter(',');
    sub.add_option("--repetitions", f.repetitions, "bench: timing repetitions (>= 5)");
}

RunConfig resolve(const Flags &f) {
    RunConfig c;
    if (!f.config.empty()) {
        c = lgbs::cli::load_config(f.config);
    }
    lgbs::cli::apply_seed_env(c);
    if (f.alpha) c.alpha = *f.alpha;
    if (f.loss_s2) c.loss_s2 = *f.loss_s2;
    if (f.h) c.h = *f.h;
    if (f.order) c.order = *f.order;
    if (f.samples) c.samples = *f.samples;
    if (f.seed) c.seed = *f.seed;
    if (f.workers) c.workers = *f.workers;
    if (f.out) c.output = *f.out;
    if (f.repetitions) c.repetitions = *f.repetitions;
    if (f.unitary) {
        c.unitary = {};
        c.unitary.path = *f.unitary;
    }
    if (f.haar_seed || f.modes) {
        if (f.unitary) {
            throw lgbs::cli::ConfigError("unitary", "--unitary conflicts with --haar-seed/--modes");
        }
        c.unitary.path.reset();
        if (f.haar_seed) c.unitary.haar_seed = *f.haar_seed;
        if (f.modes) c.unitary.modes = *f.modes;
    }
    if (!f.patterns.empty() && f.photons) {
        throw lgbs::cli::ConfigError("patterns", "--pattern conflicts with --photons");
    }
    if (!f.patterns.empty()) {
        c.patterns = {};
        for (const auto &p : f.patterns) c.patterns.list.push_back(lgbs::parse_pattern(p));
    }
    if (f.photons) {
        c.patterns = {};
        c.patterns.total = *f.photons;
    }
    if (!f.schedule.empty()) c.schedule = f.schedule;
    if (!f.modes_list.empty()) c.modes_list = f.modes_list;
    if (!f.photons_list.empty()) c.photons_list = f.photons_list;
    return c;
}

int run(const std::string &name, const Command &cmd, const Flags &flags) {
    try {
        const RunConfig c = resolve(flags);
        std::ostringstream body;
        nlohmann::json meta = cmd(c, body, std::cerr);
        if (c.output.empty() || c.output == "-") {
            std::cout << body.str();
        } else {
            std::ofstream out(c.output);
            if (!out) {
                throw lgbs::cli::ConfigError("output", "cannot open " + c.output);
            }
            out << body.str();
            meta["command"] = name;
            meta["config"] = lgbs::cli::config_to_json(c);
            std::ofstream side(c.output + ".meta.json");
            side << meta.dump(2) << '\n';
        }
        return 0;
    } catch (const lgbs::ParseError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const lgbs::ResourceLimitError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Lossy Gaussian boson sampling: expansion estimator, exact oracle, benchmarks"};
    app.require_subcommand(1);

    const std::map<std::string, std::pair<std::string, Command>> commands = {
        {"estimate", {"Monte Carlo probability estimates (CSV)", lgbs::cli::cmd_estimate}},
        {"compare", {"estimates vs exact oracle with cosine similarity", lgbs::cli::cmd_compare}},
        {"convergence", {"similarity of K vs K+10 sample distributions", lgbs::cli::cmd_convergence}},
        {"bench", {"precompute and per-sample timings vs N", lgbs::cli::cmd_bench}},
        {"gen-unitary", {"write a Haar-random unitary file", lgbs::cli::cmd_gen_unitary}},
        {"oracle", {"exact probabilities for small photon numbers", lgbs::cli::cmd_oracle}},
    };
    std::map<std::string, Flags> flags;
    std::map<std::string, CLI::App *> subs;
    for (const auto &[name, entry] : commands) {
        subs[name] = app.add_subcommand(name, entry.first);
        add_flags(*subs[name], flags[name]);
    }
    CLI11_PARSE(app, argc, argv);
    for (const auto &[name, entry] : commands) {
        if (subs[name]->parsed()) {
            return run(name, entry.second, flags[name]);
        }
    }
    return 1;
}
