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
 * @file estimator.hpp
 * Monte Carlo estimate of an output-pattern probability: average the
 * expanded integrand over xi0 ~ Normal(0, var_xi0 I_N) and scale by
 * (prefactor * norm)^N.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <exception>
#include <mutex>
#include <random>
#include <span>
#include <thread>
#include <vector>

#include "errors.hpp"
#include "model.hpp"
#include "pattern.hpp"
#include "precompute.hpp"
#include "rng.hpp"
#include "trace_engine.hpp"
#include "unitary.hpp"

namespace lgbs {

struct Estimate {
    double mean = 0.0;
    double standard_error = 0.0; ///< stddev / sqrt(samples)
    double stddev = 0.0;         ///< unbiased sample standard deviation
    std::size_t samples = 0;
    Order order = Order::zero;
    std::uint64_t seed = 0;

    [[nodiscard]] bool negative() const { return mean < 0.0; }

    friend bool operator==(const Estimate &, const Estimate &) = default;
};

struct EstimatorOptions {
    /// 0 selects std::thread::hardware_concurrency().
    unsigned workers = 0;
};

[[nodiscard]] inline unsigned resolve_workers(unsigned requested) {
    if (requested > 0) {
        return requested;
    }
    return std::max(1U, std::thread::hardware_concurrency());
}

/// Runs body(i) for i in [0, count) on `workers` threads, contiguous blocks.
template <class Body>
void parallel_for(std::size_t count, unsigned workers, Body &&body) {
    workers = static_cast<unsigned>(
        std::min<std::size_t>(std::max(1U, workers), std::max<std::size_t>(count, 1)));
    if (workers == 1) {
        for (std::size_t i = 0; i < count; ++i) {
            body(i);
        }
        return;
    }
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::size_t block = (count + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        const std::size_t begin = w * block;
        const std::size_t end = std::min(count, begin + block);
        pool.emplace_back([&, begin, end] {
            try {
                for (std::size_t i = begin; i < end; ++i) {
                    body(i);
                }
            } catch (...) {
                const std::lock_guard lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
            }
        });
    }
    for (auto &t : pool) {
        t.join();
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

/// Pairwise sum in a fixed association order.
[[nodiscard]] inline double pairwise_sum(std::span<const double> v) {
    if (v.size() <= 8) {
        double s = 0.0;
        for (double x : v) {
            s += x;
        }
        return s;
    }
    const std::size_t half = v.size() / 2;
    return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

/// Draws xi0 for sample `index`: N independent Normal(0, var_xi0) values.
inline void draw_xi0(std::uint64_t seed, std::uint64_t index, double sd,
                     std::span<double> out) {
    SplitMix64 engine = substream(seed, index);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (double &x : out) {
        x = sd * normal(engine);
    }
}

/// Raw integrand values, one per sample, indexed by sample number.
[[nodiscard]] inline std::vector<double>
sample_integrand(const IntegrandEvaluator &eval, double var_xi0, std::size_t samples,
                 std::uint64_t seed, unsigned workers) {
    std::vector<double> values(samples);
    const double sd = std::sqrt(var_xi0);
    const std::size_t n = eval.modes();
    parallel_for(samples, resolve_workers(workers), [&](std::size_t i) {
        thread_local std::vector<double> xi0;
        xi0.resize(n);
        draw_xi0(seed, i, sd, xi0);
        values[i] = eval(xi0);
    });
    return values;
}

[[nodiscard]] inline Estimate summarize(std::span<const double> values, double scale,
                                        Order order, std::uint64_t seed) {
    Estimate e;
    e.samples = values.size();
    e.order = order;
    e.seed = seed;
    const double n = static_cast<double>(values.size());
    const double mean = pairwise_sum(values) / n;
    std::vector<double> dev(values.size());
    std::transform(values.begin(), values.end(), dev.begin(), [mean](double v) {
        const double d = v - mean;
        return d * d;
    });
    const double var = values.size() > 1 ? pairwise_sum(dev) / (n - 1.0) : 0.0;
    e.mean = scale * mean;
    e.stddev = std::abs(scale) * std::sqrt(var);
    e.standard_error = e.stddev / std::sqrt(n);
    return e;
}

[[nodiscard]] inline Estimate estimate(const PrecomputeTables &tables,
                                       const UnitaryMatrix &u, const ModelParams &params,
                                       const OutputPattern &pattern, Order order,
                                       std::size_t samples, std::uint64_t seed,
                                       const EstimatorOptions &opts = {}) {
    if (samples < 2) {
        throw ParameterError("estimate: at least 2 samples are required");
    }
    const IntegrandEvaluator eval(tables, params, u, pattern, order);
    const auto values = sample_integrand(eval, params.var_xi0, samples, seed, opts.workers);
    return summarize(values, params.probability_scale(u.size()), order, seed);
}

[[nodiscard]] inline Estimate estimate(const UnitaryMatrix &u, const ModelParams &params,
                                       const OutputPattern &pattern, Order order,
                                       std::size_t samples, std::uint64_t seed,
                                       const EstimatorOptions &opts = {}) {
    if (samples < 2) {
        throw ParameterError("estimate: at least 2 samples are required");
    }
    return estimate(build_tables(u, pattern), u, params, pattern, order, samples, seed,
                    opts);
}

/// Seed used for `pattern` inside estimate_distribution.
[[nodiscard]] inline std::uint64_t pattern_seed(std::uint64_t seed,
                                                const OutputPattern &pattern) {
    return derive_seed(seed, pattern.counts());
}

[[nodiscard]] inline unsigned max_occupancy(std::span<const OutputPattern> patterns) {
    unsigned top = 0;
    for (const auto &p : patterns) {
        top = std::max(top, p.max_count());
    }
    return top;
}

/**
 * Estimates for a batch of patterns sharing one set of contraction tables.
 * Each pattern uses pattern_seed(seed, pattern), so equal patterns give equal
 * estimates wherever they appear in the list.
 */
[[nodiscard]] inline std::vector<Estimate>
estimate_distribution(const UnitaryMatrix &u, const ModelParams &params,
                      std::span<const OutputPattern> patterns, Order order,
                      std::size_t samples_per_pattern, std::uint64_t seed,
                      const EstimatorOptions &opts = {}) {
    if (patterns.empty()) {
        throw ParameterError("estimate_distribution: empty pattern list");
    }
    if (samples_per_pattern < 2) {
        throw ParameterError("estimate_distribution: at least 2 samples are required");
    }
    for (const auto &p : patterns) {
        if (p.modes() != u.size()) {
            throw ParameterError("estimate_distribution: pattern " + to_string(p) +
                                 " does not have N entries");
        }
    }
    const PrecomputeTables tables = build_contractions(u, max_occupancy(patterns));
    std::vector<Estimate> out;
    out.reserve(patterns.size());
    for (const auto &p : patterns) {
        out.push_back(estimate(tables, u, params, p, order, samples_per_pattern,
                               pattern_seed(seed, p), opts));
    }
    return out;
}

} // namespace lgbs
