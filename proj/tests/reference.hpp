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
// Test-only reference implementations. Nothing here may call into
// trace_engine.hpp or precompute.hpp: these are the independent routes the
// optimized code is checked against.
#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "lgbs/model.hpp"
#include "lgbs/pattern.hpp"
#include "lgbs/unitary.hpp"

namespace lgbs::reference {

inline double factorial(unsigned n) {
    double f = 1.0;
    for (unsigned k = 2; k <= n; ++k) f *= k;
    return f;
}

/// <m|phi> for |phi> = exp(sum_j S_j d_j^dag)|0>.
inline Complex coherent_amplitude(const std::vector<Complex> &s,
                                  const std::vector<unsigned> &m) {
    Complex out(1.0, 0.0);
    for (std::size_t j = 0; j < s.size(); ++j) {
        Complex p(1.0, 0.0);
        for (unsigned k = 0; k < m[j]; ++k) p *= s[j];
        out *= p / std::sqrt(factorial(m[j]));
    }
    return out;
}

/// Applies d_{modes[0]}, then d_{modes[1]}, ... to |n>; returns the
/// coefficient and overwrites n with the resulting occupation.
inline double annihilate(std::vector<unsigned> &n, const std::vector<std::size_t> &modes) {
    double coef = 1.0;
    for (std::size_t j : modes) {
        if (n[j] == 0) return 0.0;
        coef *= std::sqrt(static_cast<double>(n[j]));
        --n[j];
    }
    return coef;
}

/// Tr{d^dag_{c1} ... d^dag_{ca} nu d_{a1} ... d_{ab} |n><n|}
///   = <n| d^dag... |phi> <phi| d... |n>, by explicit ladder actions.
inline Complex ladder_trace(const std::vector<Complex> &s, const std::vector<unsigned> &n,
                            const std::vector<std::size_t> &creations,
                            const std::vector<std::size_t> &annihilations) {
    std::vector<unsigned> left = n;
    const double cl = annihilate(left, creations);
    if (cl == 0.0) return {0.0, 0.0};
    std::vector<unsigned> right = n;
    const double cr = annihilate(right, annihilations);
    if (cr == 0.0) return {0.0, 0.0};
    return cl * coherent_amplitude(s, left) * cr * std::conj(coherent_amplitude(s, right));
}

/// Single-mode check through dense truncated Fock matrices:
/// <n|(a^dag)^q|phi> <phi|a^p|n>.
inline Complex dense_single_mode_trace(Complex s, unsigned n, unsigned q, unsigned p) {
    const int dim = static_cast<int>(n) + 3;
    ComplexMatrix create = ComplexMatrix::Zero(dim, dim);
    for (int k = 0; k + 1 < dim; ++k) create(k + 1, k) = std::sqrt(static_cast<double>(k + 1));
    ComplexVector phi(dim);
    for (int k = 0; k < dim; ++k) {
        phi(k) = std::pow(s, k) / std::sqrt(factorial(static_cast<unsigned>(k)));
    }
    ComplexVector bra_n = ComplexVector::Zero(dim);
    bra_n(static_cast<int>(n)) = 1.0;
    ComplexVector up = phi;
    for (unsigned k = 0; k < q; ++k) up = create * up;
    ComplexVector down = phi;
    for (unsigned k = 0; k < p; ++k) down = create * down;
    // <phi|a^p|n> = conj(<n|(a^dag)^p|phi>)
    return bra_n.dot(up) * std::conj(bra_n.dot(down));
}

/// E[prod of chi_i (tilde = false) / chi~_i (tilde = true)] by enumerating
/// perfect matchings; per-mode Cov(chi, chi) = Cov(chi~, chi~) = var and
/// Cov(chi, chi~) = h, independent across modes.
struct ChiVar {
    bool tilde;
    std::size_t mode;
};

inline double wick_chi(const std::vector<ChiVar> &vars, double var, double h) {
    if (vars.size() % 2 == 1) return 0.0;
    std::vector<bool> used(vars.size(), false);
    std::function<double()> rec = [&]() -> double {
        std::size_t first = 0;
        while (first < vars.size() && used[first]) ++first;
        if (first == vars.size()) return 1.0;
        used[first] = true;
        double total = 0.0;
        for (std::size_t b = first + 1; b < vars.size(); ++b) {
            if (used[b] || vars[b].mode != vars[first].mode) continue;
            const double w = vars[b].tilde == vars[first].tilde ? var : h;
            used[b] = true;
            total += w * rec();
            used[b] = false;
        }
        used[first] = false;
        return total;
    };
    return rec();
}

/// Brute-force expansion of E_chi[ exp(Y.d^dag) nu exp(Y~.d) ] traced with |n><n|,
/// keeping terms with a creation and b annihilation insertions for the
/// (a, b) families retained at the given order: (0,0); (2,0), (1,1), (0,2);
/// (2,2). Every input and output index is summed explicitly.
inline double brute_integrand(const UnitaryMatrix &u, const ModelParams &p,
                              const OutputPattern &pattern, const std::vector<double> &xi0,
                              int order) {
    const std::size_t n = u.size();
    std::vector<Complex> s(n, Complex(0.0, 0.0));
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) s[j] += p.c * xi0[i] * u(i, j);
    }
    std::vector<std::pair<unsigned, unsigned>> families = {{0, 0}};
    if (order >= 2) {
        families.insert(families.end(), {{2, 0}, {1, 1}, {0, 2}});
    }
    if (order >= 4) {
        families.push_back({2, 2});
    }
    Complex total(0.0, 0.0);
    for (const auto &[a, b] : families) {
        const unsigned len = a + b;
        std::size_t combos = 1;
        for (unsigned k = 0; k < len; ++k) combos *= n;
        // input indices (i_1..i_a, j_1..j_b), then output indices likewise
        for (std::size_t in_code = 0; in_code < combos; ++in_code) {
            std::vector<std::size_t> in(len);
            std::size_t code = in_code;
            for (unsigned k = 0; k < len; ++k) {
                in[k] = code % n;
                code /= n;
            }
            std::vector<ChiVar> vars;
            for (unsigned k = 0; k < len; ++k) vars.push_back({k >= a, in[k]});
            const double moment = wick_chi(vars, p.var_chi, p.h);
            if (moment == 0.0) continue;
            for (std::size_t out_code = 0; out_code < combos; ++out_code) {
                std::vector<std::size_t> out(len);
                std::size_t oc = out_code;
                for (unsigned k = 0; k < len; ++k) {
                    out[k] = oc % n;
                    oc /= n;
                }
                Complex coef(moment, 0.0);
                for (unsigned k = 0; k < len; ++k) {
                    const Complex uij = u(in[k], out[k]);
                    coef *= p.c * (k < a ? uij : std::conj(uij));
                }
                const std::vector<std::size_t> cr(out.begin(), out.begin() + a);
                const std::vector<std::size_t> an(out.begin() + a, out.end());
                total += coef / (factorial(a) * factorial(b)) *
                         ladder_trace(s, pattern.counts(), cr, an);
            }
        }
    }
    return total.real();
}

} // namespace lgbs::reference
