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
/**
 * @file commands.hpp
 * Run configuration and the batch subcommands of the lgbs CLI. Every
 * command writes a CSV document (header row first) to an output stream and
 * returns the metadata that goes into the sidecar file.
 */
#pragma once

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <fmt/format.h>
#include <json.hpp>

#include "lgbs/lgbs.hpp"

namespace lgbs::cli {

using nlohmann::json;

/// Environment variable that overrides the config-file seed.
inline constexpr const char *seed_env_var = "LGBS_SEED";

struct UnitarySource {
    std::optional<std::string> path;
    std::optional<std::uint64_t> haar_seed;
    std::optional<std::size_t> modes;
};

struct PatternSource {
    std::vector<OutputPattern> list;
    std::optional<unsigned> total;
};

struct RunConfig {
    double alpha = 0.0;
    double loss_s2 = 0.0;
    std::optional<double> h;
    UnitarySource unitary;
    PatternSource patterns;
    int order = 4;
    std::size_t samples = 4096;
    std::uint64_t seed = 1;
    unsigned workers = 0;
    std::string output;

    std::vector<std::size_t> schedule;   ///< convergence: sample counts K
    std::vector<std::size_t> modes_list; ///< convergence / bench: N values
    std::vector<unsigned> photons_list;  ///< bench: M values
    unsigned repetitions = 5;            ///< bench: timing repetitions
};

class ConfigError : public ParseError {
  public:
    ConfigError(const std::string &field, const std::string &what)
        : ParseError("config field '" + field + "': " + what), field_(field) {}
    [[nodiscard]] const std::string &field() const { return field_; }

  private:
    std::string field_;
};

namespace detail {

template <class T> T get_field(const json &doc, const char *key) {
    try {
        return doc.at(key).get<T>();
    } catch (const json::exception &e) {
        throw ConfigError(key, e.what());
    }
}

inline OutputPattern pattern_from_json(const json &item, const char *field) {
    if (item.is_string()) {
        return parse_pattern(item.get<std::string>());
    }
    if (!item.is_array() || item.empty()) {
        throw ConfigError(field, "each pattern must be a non-empty array of counts");
    }
    std::vector<unsigned> counts;
    for (const auto &v : item) {
        if (!v.is_number_unsigned()) {
            throw ConfigError(field, "photon counts must be non-negative integers");
        }
        counts.push_back(v.get<unsigned>());
    }
    return OutputPattern(std::move(counts));
}

} // namespace detail

/// Reads the config document; absent fields keep `base` values.
inline RunConfig config_from_json(const json &doc, RunConfig base = {}) {
    if (!doc.is_object()) {
        throw ConfigError("<root>", "config must be an object");
    }
    RunConfig c = std::move(base);
    if (doc.contains("alpha")) c.alpha = detail::get_field<double>(doc, "alpha");
    if (doc.contains("loss_s2")) c.loss_s2 = detail::get_field<double>(doc, "loss_s2");
    if (doc.contains("h")) c.h = detail::get_field<double>(doc, "h");
    if (doc.contains("order")) c.order = detail::get_field<int>(doc, "order");
    if (doc.contains("samples")) c.samples = detail::get_field<std::size_t>(doc, "samples");
    if (doc.contains("seed")) c.seed = detail::get_field<std::uint64_t>(doc, "seed");
    if (doc.contains("workers")) c.workers = detail::get_field<unsigned>(doc, "workers");
    if (doc.contains("output")) c.output = detail::get_field<std::string>(doc, "output");
    if (doc.contains("repetitions"))
        c.repetitions = detail::get_field<unsigned>(doc, "repetitions");
    if (doc.contains("schedule"))
        c.schedule = detail::get_field<std::vector<std::size_t>>(doc, "schedule");
    if (doc.contains("modes_list"))
        c.modes_list = detail::get_field<std::vector<std::size_t>>(doc, "modes_list");
    if (doc.contains("photons_list"))
        c.photons_list = detail::get_field<std::vector<unsigned>>(doc, "photons_list");

    if (doc.contains("unitary")) {
        const auto &u = doc.at("unitary");
        c.unitary = {};
        if (u.is_string()) {
            c.unitary.path = u.get<std::string>();
        } else if (u.is_object()) {
            if (u.contains("path")) c.unitary.path = detail::get_field<std::string>(u, "path");
            if (u.contains("haar_seed"))
                c.unitary.haar_seed = detail::get_field<std::uint64_t>(u, "haar_seed");
            if (u.contains("n")) c.unitary.modes = detail::get_field<std::size_t>(u, "n");
        } else {
            throw ConfigError("unitary", "expected a path or {haar_seed, n}");
        }
    }
    if (doc.contains("patterns")) {
        const auto &p = doc.at("patterns");
        c.patterns = {};
        if (p.is_array()) {
            for (const auto &item : p) {
                c.patterns.list.push_back(detail::pattern_from_json(item, "patterns"));
            }
        } else if (p.is_object() && p.contains("total")) {
            c.patterns.total = detail::get_field<unsigned>(p, "total");
        } else {
            throw ConfigError("patterns", "expected a list of patterns or {total: M}");
        }
    }
    return c;
}

inline RunConfig load_config(const std::string &path, RunConfig base = {}) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("config", "cannot open " + path);
    }
    json doc;
    try {
        in >> doc;
    } catch (const json::parse_error &e) {
        throw ConfigError("config", path + ": " + e.what());
    }
    return config_from_json(doc, std::move(base));
}

/// Applies LGBS_SEED when set.
inline void apply_seed_env(RunConfig &c) {
    if (const char *env = std::getenv(seed_env_var); env != nullptr && *env != '\0') {
        try {
            std::size_t used = 0;
            const auto v = std::stoull(env, &used);
            if (used != std::string(env).size()) {
                throw std::invalid_argument(env);
            }
            c.seed = v;
        } catch (const std::exception &) {
            throw ConfigError("seed", std::string(seed_env_var) + " is not an unsigned integer");
        }
    }
}

inline ModelParams resolve_params(const RunConfig &c) {
    try {
        return derive_params(c.alpha, c.loss_s2, c.h);
    } catch (const ParameterError &e) {
        const std::string msg = e.what();
        const std::string field = msg.rfind("alpha", 0) == 0     ? "alpha"
                                  : msg.rfind("loss_s2", 0) == 0 ? "loss_s2"
                                                                 : "h";
        throw ConfigError(field, msg);
    }
}

inline Order resolve_order(const RunConfig &c) {
    try {
        return order_from_int(c.order);
    } catch (const UnsupportedOrderError &e) {
        throw ConfigError("order", e.what());
    }
}

inline UnitaryMatrix resolve_unitary(const RunConfig &c) {
    const bool has_path = c.unitary.path.has_value();
    const bool has_haar = c.unitary.haar_seed.has_value() || c.unitary.modes.has_value();
    if (has_path == has_haar) {
        throw ConfigError("unitary", "give exactly one of a file path or {haar_seed, n}");
    }
    if (has_path) {
        UnitaryMatrix u = load_unitary(*c.unitary.path);
        const double residual = check_unitary(u);
        if (residual > unitarity_tolerance) {
            throw ConfigError("unitary", fmt::format("{} is not unitary (residual {:.3g})",
                                                     *c.unitary.path, residual));
        }
        return u;
    }
    if (!c.unitary.modes || *c.unitary.modes == 0) {
        throw ConfigError("unitary", "Haar source needs n >= 1");
    }
    return haar_random(*c.unitary.modes, c.unitary.haar_seed.value_or(c.seed));
}

inline std::vector<OutputPattern> resolve_patterns(const RunConfig &c, std::size_t modes) {
    const bool has_list = !c.patterns.list.empty();
    if (has_list == c.patterns.total.has_value()) {
        throw ConfigError("patterns", "give exactly one of a pattern list or {total: M}");
    }
    if (!has_list) {
        return enumerate_patterns(modes, *c.patterns.total);
    }
    for (const auto &p : c.patterns.list) {
        if (p.modes() != modes) {
            throw ConfigError("patterns", fmt::format("pattern {} has {} entries, expected N = {}",
                                                      to_string(p), p.modes(), modes));
        }
    }
    return c.patterns.list;
}

inline void check_samples(const RunConfig &c) {
    if (c.samples < 2) {
        throw ConfigError("samples", "must be >= 2");
    }
}

inline json config_to_json(const RunConfig &c) {
    json doc = {{"alpha", c.alpha},     {"loss_s2", c.loss_s2}, {"order", c.order},
                {"samples", c.samples}, {"seed", c.seed},       {"workers", c.workers},
                {"output", c.output},   {"repetitions", c.repetitions}};
    if (c.h) doc["h"] = *c.h;
    json u = json::object();
    if (c.unitary.path) u["path"] = *c.unitary.path;
    if (c.unitary.haar_seed) u["haar_seed"] = *c.unitary.haar_seed;
    if (c.unitary.modes) u["n"] = *c.unitary.modes;
    doc["unitary"] = u;
    if (c.patterns.total) {
        doc["patterns"] = {{"total", *c.patterns.total}};
    } else {
        json list = json::array();
        for (const auto &p : c.patterns.list) list.push_back(p.counts());
        doc["patterns"] = list;
    }
    if (!c.schedule.empty()) doc["schedule"] = c.schedule;
    if (!c.modes_list.empty()) doc["modes_list"] = c.modes_list;
    if (!c.photons_list.empty()) doc["photons_list"] = c.photons_list;
    return doc;
}

inline json params_to_json(const ModelParams &p) {
    return {{"alpha", p.alpha},
            {"c", p.c},
            {"s", p.s},
            {"sigma_diag", p.sigma.diag},
            {"sigma_off", p.sigma.off},
            {"var_xi0", p.var_xi0},
            {"var_chi", p.var_chi},
            {"h", p.h},
            {"epsilon", p.epsilon},
            {"prefactor_per_mode", p.prefactor_per_mode},
            {"norm_per_mode", p.norm_per_mode}};
}

/// Shortest text that reads back to the same double.
inline std::string num(double v) { return fmt::format("{}", v); }

/// Startup banner with the perturbation parameter.
inline void report_epsilon(const ModelParams &p, std::ostream &log) {
    log << fmt::format("epsilon = {:.6f} (alpha = {:.6g}, c^2 = {:.6g})\n", p.epsilon, p.alpha,
                       p.transmission_c2());
    if (p.epsilon > 0.25) {
        log << "warning: epsilon > 0.25; the expansion converges slowly at these parameters\n";
    }
}

// ---------------------------------------------------------------------------

inline json cmd_estimate(const RunConfig &c, std::ostream &csv, std::ostream &log) {
    const ModelParams params = resolve_params(c);
    const Order order = resolve_order(c);
    check_samples(c);
    report_epsilon(params, log);
    const UnitaryMatrix u = resolve_unitary(c);
    const auto patterns = resolve_patterns(c, u.size());
    const auto estimates = estimate_distribution(u, params, patterns, order, c.samples, c.seed,
                                                 EstimatorOptions{c.workers});
    csv << "pattern,mean,stderr,stddev,order,samples,seed,negative_flag\n";
    std::size_t negatives = 0;
    for (std::size_t i = 0; i < patterns.size(); ++i) {
        const auto &e = estimates[i];
        negatives += e.negative() ? 1 : 0;
        csv << fmt::format("{},{},{},{},{},{},{},{}\n", to_string(patterns[i]), num(e.mean),
                           num(e.standard_error), num(e.stddev), to_int(e.order), e.samples,
                           e.seed, e.negative() ? 1 : 0);
    }
    return {{"params", params_to_json(params)}, {"rows", patterns.size()},
            {"negative_rows", negatives}};
}

inline json cmd_oracle(const RunConfig &c, std::ostream &csv, std::ostream &log) {
    const ModelParams params = resolve_params(c);
    report_epsilon(params, log);
    const UnitaryMatrix u = resolve_unitary(c);
    const auto patterns = resolve_patterns(c, u.size());
    csv << "pattern,probability\n";
    for (const auto &p : patterns) {
        csv << fmt::format("{},{}\n", to_string(p), num(exact_probability(u, params, p)));
    }
    return {{"params", params_to_json(params)}, {"rows", patterns.size()}};
}

inline json cmd_compare(const RunConfig &c, std::ostream &csv, std::ostream &log) {
    const ModelParams params = resolve_params(c);
    const Order order = resolve_order(c);
    check_samples(c);
    report_epsilon(params, log);
    const UnitaryMatrix u = resolve_unitary(c);
    const auto patterns = resolve_patterns(c, u.size());
    for (const auto &p : patterns) {
        if (p.total() > oracle_max_photons) {
            throw ResourceLimitError(fmt::format(
                "compare: pattern {} has M = {} > {} (oracle pairing budget)", to_string(p),
                p.total(), oracle_max_photons));
        }
    }
    const auto estimates = estimate_distribution(u, params, patterns, order, c.samples, c.seed,
                                                 EstimatorOptions{c.workers});
    std::vector<double> est;
    std::vector<double> exact;
    csv << "pattern,estimate,stderr,oracle,abs_error\n";
    for (std::size_t i = 0; i < patterns.size(); ++i) {
        const double o = exact_probability(u, params, patterns[i]);
        est.push_back(estimates[i].mean);
        exact.push_back(o);
        csv << fmt::format("{},{},{},{},{}\n", to_string(patterns[i]), num(estimates[i].mean),
                           num(estimates[i].standard_error), num(o),
                           num(std::abs(estimates[i].mean - o)));
    }
    const double sim = cosine_similarity(est, exact);
    csv << fmt::format("cosine_similarity,{},,,\n", num(sim));
    return {{"params", params_to_json(params)},
            {"rows", patterns.size()},
            {"cosine_similarity", sim}};
}

/// Self-similarity of the K-sample and (K+10)-sample distributions per N.
inline json cmd_convergence(const RunConfig &c, std::ostream &csv, std::ostream &log) {
    const ModelParams params = resolve_params(c);
    const Order order = resolve_order(c);
    report_epsilon(params, log);
    if (c.schedule.empty()) {
        throw ConfigError("schedule", "convergence needs a non-empty sample schedule");
    }
    for (std::size_t k : c.schedule) {
        if (k < 2) {
            throw ConfigError("schedule", "sample counts must be >= 2");
        }
    }
    std::vector<std::size_t> modes = c.modes_list;
    std::optional<UnitaryMatrix> fixed;
    if (modes.empty()) {
        fixed = resolve_unitary(c);
        modes.push_back(fixed->size());
    }
    if (!c.patterns.total) {
        throw ConfigError("patterns", "convergence needs {total: M}");
    }
    csv << "n_modes,samples,similarity\n";
    json curves = json::object();
    for (std::size_t n : modes) {
        if (n == 0) {
            throw ConfigError("modes_list", "N must be >= 1");
        }
        const UnitaryMatrix u =
            fixed ? *fixed : haar_random(n, c.unitary.haar_seed.value_or(c.seed) + n);
        const auto patterns = enumerate_patterns(n, *c.patterns.total);
        json curve = json::array();
        for (std::size_t k : c.schedule) {
            const auto a = estimate_distribution(u, params, patterns, order, k, c.seed,
                                                 EstimatorOptions{c.workers});
            const auto b = estimate_distribution(u, params, patterns, order, k + 10, c.seed,
                                                 EstimatorOptions{c.workers});
            std::vector<double> va;
            std::vector<double> vb;
            for (std::size_t i = 0; i < a.size(); ++i) {
                va.push_back(a[i].mean);
                vb.push_back(b[i].mean);
            }
            const double sim = cosine_similarity(va, vb);
            curve.push_back(sim);
            csv << fmt::format("{},{},{}\n", n, k, num(sim));
        }
        curves[std::to_string(n)] = curve;
    }
    return {{"params", params_to_json(params)}, {"similarity", curves}};
}

/// M photons spread one per mode, wrapping around when M > N.
inline OutputPattern spread_pattern(std::size_t modes, unsigned photons) {
    std::vector<unsigned> counts(modes, 0);
    for (unsigned k = 0; k < photons; ++k) {
        ++counts[k % modes];
    }
    return OutputPattern(std::move(counts));
}

struct BenchRow {
    std::size_t modes;
    unsigned photons;
    double precompute_ms;
    double per_sample_us;
};

struct BenchResult {
    std::vector<BenchRow> rows;
    double precompute_slope = 0.0;
    std::vector<std::pair<unsigned, double>> per_sample_slopes; ///< (M, slope)
};

/// Median wall-clock timings; per-sample timing runs on one worker.
inline BenchResult run_bench(const RunConfig &c, std::ostream &log) {
    using clock = std::chrono::steady_clock;
    const ModelParams params = resolve_params(c);
    const Order order = resolve_order(c);
    check_samples(c);
    const std::vector<std::size_t> modes =
        c.modes_list.empty() ? std::vector<std::size_t>{5, 10, 20, 40} : c.modes_list;
    const std::vector<unsigned> photons =
        c.photons_list.empty() ? std::vector<unsigned>{2, 4} : c.photons_list;
    const unsigned reps = std::max(5U, c.repetitions);

    BenchResult out;
    for (std::size_t n : modes) {
        if (n == 0) {
            throw ConfigError("modes_list", "N must be >= 1");
        }
        const UnitaryMatrix u = haar_random(n, c.unitary.haar_seed.value_or(c.seed) + n);
        unsigned top = 0;
        for (unsigned m : photons) top = std::max(top, spread_pattern(n, m).max_count());
        std::vector<double> pre;
        PrecomputeTables tables;
        for (unsigned r = 0; r < reps; ++r) {
            const auto t0 = clock::now();
            tables = build_contractions(u, top);
            pre.push_back(std::chrono::duration<double, std::milli>(clock::now() - t0).count());
        }
        const double pre_ms = median(pre);
        for (unsigned m : photons) {
            const OutputPattern p = spread_pattern(n, m);
            std::vector<double> per;
            for (unsigned r = 0; r < reps; ++r) {
                const auto t0 = clock::now();
                const auto e = estimate(tables, u, params, p, order, c.samples, c.seed + r,
                                        EstimatorOptions{1});
                const double us =
                    std::chrono::duration<double, std::micro>(clock::now() - t0).count();
                per.push_back(us / static_cast<double>(e.samples));
            }
            out.rows.push_back({n, m, pre_ms, median(per)});
            log << fmt::format("bench N={} M={}: precompute {:.3f} ms, {:.3f} us/sample\n", n,
                               m, pre_ms, out.rows.back().per_sample_us);
        }
    }
    if (modes.size() >= 2) {
        std::vector<double> x;
        std::vector<double> y;
        for (std::size_t n : modes) {
            for (const auto &r : out.rows) {
                if (r.modes == n) {
                    x.push_back(static_cast<double>(n));
                    y.push_back(std::max(r.precompute_ms, 1e-6));
                    break;
                }
            }
        }
        out.precompute_slope = loglog_slope(x, y);
        for (unsigned m : photons) {
            std::vector<double> xs;
            std::vector<double> ys;
            for (const auto &r : out.rows) {
                if (r.photons == m) {
                    xs.push_back(static_cast<double>(r.modes));
                    ys.push_back(std::max(r.per_sample_us, 1e-6));
                }
            }
            out.per_sample_slopes.emplace_back(m, loglog_slope(xs, ys));
        }
    }
    return out;
}

inline json cmd_bench(const RunConfig &c, std::ostream &csv, std::ostream &log) {
    const BenchResult r = run_bench(c, log);
    csv << "n_modes,photons,precompute_ms,per_sample_us\n";
    for (const auto &row : r.rows) {
        csv << fmt::format("{},{},{:.6f},{:.6f}\n", row.modes, row.photons, row.precompute_ms,
                           row.per_sample_us);
    }
    json slopes = json::object();
    for (const auto &[m, s] : r.per_sample_slopes) {
        slopes[std::to_string(m)] = s;
        log << fmt::format("per-sample log-log slope (M={}): {:.3f}\n", m, s);
    }
    log << fmt::format("precompute log-log slope: {:.3f}\n", r.precompute_slope);
    return {{"precompute_slope", r.precompute_slope}, {"per_sample_slopes", slopes}};
}

/// Writes a Haar unitary document (not CSV) to `out`.
inline json cmd_gen_unitary(const RunConfig &c, std::ostream &out, std::ostream &log) {
    if (!c.unitary.modes || *c.unitary.modes == 0) {
        throw ConfigError("unitary", "gen-unitary needs n >= 1");
    }
    const std::uint64_t seed = c.unitary.haar_seed.value_or(c.seed);
    const UnitaryMatrix u = haar_random(*c.unitary.modes, seed);
    const double residual = check_unitary(u);
    log << fmt::format("generated {}x{} Haar unitary, residual {:.3g}\n", u.size(), u.size(),
                       residual);
    out << to_json(u).dump(1) << '\n';
    return {{"n", u.size()}, {"haar_seed", seed}, {"residual", residual}};
}

} // namespace lgbs::cli
