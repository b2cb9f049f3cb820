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
 * @file trace_engine.hpp
 * Closed-form pattern traces of the rank-one operator
 * nu(x) = exp(sum_j S_j d_j^dag)|0><0|exp(sum_j S_j^* d_j), S = U^T x,
 * and the Taylor-expanded integrand evaluated for one xi0 sample.
 *
 * A trace Tr{(d^dag)^q nu (d)^p |n><n|} factorizes over output modes into
 *
 *   S_j^{n_j - q_j} (S_j^*)^{n_j - p_j} n_j! / ((n_j - q_j)! (n_j - p_j)!),
 *
 * which is evaluated with non-negative exponents only; the factor is zero
 * once an insertion exceeds the occupancy.
 */
#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <span>
#include <string>
#include <vector>

#include "errors.hpp"
#include "model.hpp"
#include "pattern.hpp"
#include "precompute.hpp"
#include "unitary.hpp"

namespace lgbs {

/// Highest power of c retained in the expansion.
enum class Order : int { zero = 0, two = 2, four = 4 };

[[nodiscard]] inline Order order_from_int(int k) {
    switch (k) {
    case 0:
        return Order::zero;
    case 2:
        return Order::two;
    case 4:
        return Order::four;
    default:
        throw UnsupportedOrderError("expansion order must be 0, 2 or 4 (got " +
                                    std::to_string(k) + ")");
    }
}

[[nodiscard]] inline int to_int(Order k) { return static_cast<int>(k); }

/// S_j = sum_i x_i U_ij for every output mode j.
struct LinearForms {
    ComplexVector s_vals;
};

[[nodiscard]] inline LinearForms linear_forms(const UnitaryMatrix &u,
                                              std::span<const double> x) {
    if (x.size() != u.size()) {
        throw ParameterError("linear_forms: x has wrong length");
    }
    const Eigen::Map<const Eigen::VectorXd> xv(x.data(),
                                               static_cast<Eigen::Index>(x.size()));
    return {u.matrix().transpose() * xv.cast<Complex>()};
}

namespace detail {

inline Complex ipow(Complex z, unsigned k) {
    Complex out(1.0, 0.0);
    while (k > 0) {
        if (k & 1U) {
            out *= z;
        }
        z *= z;
        k >>= 1U;
    }
    return out;
}

} // namespace detail

/// Single-mode factor of Tr{(d^dag)^create nu (d)^annihilate |n><n|}.
[[nodiscard]] inline Complex mode_factor(Complex s, unsigned n, unsigned create,
                                         unsigned annihilate,
                                         const FactorialTable &f) {
    if (create > n || annihilate > n) {
        return {0.0, 0.0};
    }
    const double weight = f(n, create) * f(n, annihilate) / f.factorial(n);
    return detail::ipow(s, n - create) * detail::ipow(std::conj(s), n - annihilate) *
           weight;
}

/// prod_j |S_j|^{2 n_j} / n_j!
[[nodiscard]] inline double base_trace(const LinearForms &forms,
                                       const OutputPattern &pattern) {
    if (static_cast<std::size_t>(forms.s_vals.size()) != pattern.modes()) {
        throw ParameterError("base_trace: pattern length does not match forms");
    }
    double out = 1.0;
    for (std::size_t j = 0; j < pattern.modes(); ++j) {
        const unsigned n = pattern[j];
        if (n == 0) {
            continue;
        }
        const double mag2 = std::norm(forms.s_vals[static_cast<Eigen::Index>(j)]);
        double term = 1.0;
        for (unsigned k = 1; k <= n; ++k) {
            term *= mag2 / static_cast<double>(k);
        }
        out *= term;
    }
    return out;
}

/**
 * Tr{(d^dag)^q nu(x) (d)^p |n><n|} for per-mode creation counts `q` and
 * annihilation counts `p`. Counts above the occupancy give exactly zero.
 */
[[nodiscard]] inline Complex insertion_trace(const LinearForms &forms,
                                             const OutputPattern &pattern,
                                             std::span<const unsigned> p,
                                             std::span<const unsigned> q) {
    const std::size_t n_modes = pattern.modes();
    if (static_cast<std::size_t>(forms.s_vals.size()) != n_modes ||
        p.size() != n_modes || q.size() != n_modes) {
        throw ParameterError("insertion_trace: length mismatch");
    }
    unsigned top = pattern.max_count();
    const FactorialTable f(top);
    Complex out(1.0, 0.0);
    for (std::size_t j = 0; j < n_modes; ++j) {
        out *= mode_factor(forms.s_vals[static_cast<Eigen::Index>(j)], pattern[j],
                           q[j], p[j], f);
        if (out == Complex(0.0, 0.0)) {
            break;
        }
    }
    return out;
}

/**
 * Evaluates the bracketed integrand for a fixed (tables, params, U, pattern,
 * order) tuple and any number of xi0 samples.
 *
 * Insertions on an empty output mode vanish (F^0_p = 0 for p >= 1), so all
 * index sums run over the R occupied modes only; one sample costs
 * O(N R + R^5) after construction.
 */
class IntegrandEvaluator {
  public:
    IntegrandEvaluator(const PrecomputeTables &tables, const ModelParams &params,
                       const UnitaryMatrix &u, const OutputPattern &pattern,
                       Order order)
        : params_(params), n_modes_(u.size()), order_(order),
          occupied_(pattern.occupied()), factorials_(tables.factorials) {
        const std::size_t n = u.size();
        if (pattern.modes() != n || tables.modes() != n) {
            throw ParameterError("integrand: N mismatch between U, pattern and tables");
        }
        if (factorials_.max_m() < pattern.max_count()) {
            factorials_ = FactorialTable(pattern.max_count());
        }
        const std::size_t r = occupied_.size();
        counts_.resize(r);
        columns_ = ComplexMatrix(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(r));
        for (std::size_t a = 0; a < r; ++a) {
            counts_[a] = pattern[occupied_[a]];
            columns_.col(static_cast<Eigen::Index>(a)) =
                u.matrix().col(static_cast<Eigen::Index>(occupied_[a]));
        }

        const double c2 = params.transmission_c2();
        const double var = params.var_chi;
        const double h = params.h;

        for (std::size_t a = 0; a < r; ++a) {
            for (std::size_t b = a; b < r; ++b) {
                pairs_.push_back({a, b, a == b ? 1.0 : 2.0});
            }
        }
        if (order_ == Order::zero) {
            return;
        }

        for (const auto &pr : pairs_) {
            const Complex t = tables.t2(idx(pr.first), idx(pr.second));
            pair_coef_.push_back(0.5 * var * c2 * pr.multiplicity * t);
        }
        mixed_coef_.resize(r * r);
        for (std::size_t a = 0; a < r; ++a) {
            for (std::size_t b = 0; b < r; ++b) {
                mixed_coef_[a * r + b] = h * c2 * tables.m2(idx(a), idx(b));
            }
        }
        if (order_ == Order::two) {
            return;
        }

        // c^4 terms of the (d^dag)^2 nu d^2 family, with the Wick moment
        // E[chi_i^2 chi~_j^2] = var^2 + 2 delta_ij h^2. The i != j sum runs
        // over unordered mode pairs {i, j}, i.e. 1/2 of (M (x) M - Q) over
        // ordered pairs. Creation/annihilation pairs are symmetric in their
        // two indices, so M (x) M is symmetrized as well.
        const double c4 = c2 * c2;
        const double diag = 0.25 * c4;
        const double cross = 0.5 * h * h * c4;
        const std::size_t np = pairs_.size();
        quad_coef_.resize(np * np);
        for (std::size_t x = 0; x < np; ++x) {
            const auto &cr = pairs_[x];
            const std::size_t k = occupied_[cr.first];
            const std::size_t l = occupied_[cr.second];
            const Complex t_kl = tables.t2(idx(cr.first), idx(cr.second));
            for (std::size_t y = 0; y < np; ++y) {
                const auto &an = pairs_[y];
                const std::size_t m = occupied_[an.first];
                const std::size_t nn = occupied_[an.second];
                const Complex t_mn = tables.t2(idx(an.first), idx(an.second));
                const Complex q = tables.q4(k, l, m, nn);
                const Complex msym =
                    0.5 * (tables.m2(eidx(k), eidx(m)) * tables.m2(eidx(l), eidx(nn)) +
                           tables.m2(eidx(k), eidx(nn)) * tables.m2(eidx(l), eidx(m)));
                const Complex coef = diag * (var * var * t_kl * std::conj(t_mn) +
                                             2.0 * h * h * q) +
                                     cross * (msym - q);
                quad_coef_[x * np + y] = cr.multiplicity * an.multiplicity * coef;
            }
        }
    }

    [[nodiscard]] Order order() const { return order_; }
    [[nodiscard]] std::size_t modes() const { return n_modes_; }

    /// Integrand value for one xi0 sample (length N).
    [[nodiscard]] double operator()(std::span<const double> xi0) const {
        if (xi0.size() != n_modes_) {
            throw ParameterError("integrand: xi0 has wrong length");
        }
        const std::size_t r = occupied_.size();
        if (r == 0) {
            return 1.0;
        }
        const Eigen::Map<const Eigen::VectorXd> xv(xi0.data(),
                                                   static_cast<Eigen::Index>(xi0.size()));
        const ComplexVector s = columns_.transpose() * (params_.c * xv).cast<Complex>();

        // w[a][q][p]: mode factor for q creations and p annihilations.
        std::vector<std::array<std::array<Complex, 3>, 3>> w(r);
        for (std::size_t a = 0; a < r; ++a) {
            const unsigned top = order_ == Order::zero ? 0U : 2U;
            for (unsigned q = 0; q <= top; ++q) {
                for (unsigned p = 0; p <= top; ++p) {
                    w[a][q][p] = mode_factor(s[static_cast<Eigen::Index>(a)], counts_[a],
                                             q, p, factorials_);
                }
            }
        }

        std::vector<unsigned> create(r, 0);
        std::vector<unsigned> annihilate(r, 0);
        auto product = [&]() {
            Complex out(1.0, 0.0);
            for (std::size_t a = 0; a < r; ++a) {
                out *= w[a][create[a]][annihilate[a]];
            }
            return out;
        };

        Complex total = product();
        if (order_ != Order::zero) {
            for (std::size_t x = 0; x < pairs_.size(); ++x) {
                const auto &pr = pairs_[x];
                ++create[pr.first];
                ++create[pr.second];
                const Complex up = product();
                --create[pr.first];
                --create[pr.second];
                ++annihilate[pr.first];
                ++annihilate[pr.second];
                const Complex down = product();
                --annihilate[pr.first];
                --annihilate[pr.second];
                total += pair_coef_[x] * up + std::conj(pair_coef_[x]) * down;
            }
            for (std::size_t a = 0; a < r; ++a) {
                for (std::size_t b = 0; b < r; ++b) {
                    ++create[a];
                    ++annihilate[b];
                    total += mixed_coef_[a * r + b] * product();
                    --create[a];
                    --annihilate[b];
                }
            }
        }
        if (order_ == Order::four) {
            const std::size_t np = pairs_.size();
            for (std::size_t x = 0; x < np; ++x) {
                ++create[pairs_[x].first];
                ++create[pairs_[x].second];
                for (std::size_t y = 0; y < np; ++y) {
                    ++annihilate[pairs_[y].first];
                    ++annihilate[pairs_[y].second];
                    total += quad_coef_[x * np + y] * product();
                    --annihilate[pairs_[y].first];
                    --annihilate[pairs_[y].second];
                }
                --create[pairs_[x].first];
                --create[pairs_[x].second];
            }
        }

        if (!(std::abs(total.imag()) <= imag_tolerance * (1.0 + std::abs(total.real())))) {
            throw NumericalError("integrand: residual imaginary part " +
                                 std::to_string(total.imag()) + " exceeds tolerance");
        }
        return total.real();
    }

    static constexpr double imag_tolerance = 1e-9;

  private:
    struct ModePair {
        std::size_t first;
        std::size_t second;
        double multiplicity;
    };

    [[nodiscard]] Eigen::Index idx(std::size_t a) const {
        return static_cast<Eigen::Index>(occupied_[a]);
    }
    [[nodiscard]] static Eigen::Index eidx(std::size_t j) {
        return static_cast<Eigen::Index>(j);
    }

    ModelParams params_;
    std::size_t n_modes_;
    Order order_;
    std::vector<std::size_t> occupied_;
    std::vector<unsigned> counts_;
    ComplexMatrix columns_;
    FactorialTable factorials_;
    std::vector<ModePair> pairs_;
    std::vector<Complex> pair_coef_;
    std::vector<Complex> mixed_coef_;
    std::vector<Complex> quad_coef_;
};

/// One-shot integrand evaluation; prefer IntegrandEvaluator inside loops.
[[nodiscard]] inline double integrand(const PrecomputeTables &tables,
                                      const ModelParams &params, const UnitaryMatrix &u,
                                      const OutputPattern &pattern,
                                      std::span<const double> xi0, Order order) {
    return IntegrandEvaluator(tables, params, u, pattern, order)(xi0);
}

[[nodiscard]] inline double integrand(const PrecomputeTables &tables,
                                      const ModelParams &params, const UnitaryMatrix &u,
                                      const OutputPattern &pattern,
                                      std::span<const double> xi0, int order) {
    return integrand(tables, params, u, pattern, xi0, order_from_int(order));
}

} // namespace lgbs
