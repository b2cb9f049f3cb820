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
 * @file oracle.hpp
 * Exact pattern probabilities for small photon numbers, computed from the
 * Gaussian expectation before any Taylor expansion:
 *
 *   P(n) = (prefactor * norm)^N / prod_j n_j!
 *          * E[ prod_j A_j^{n_j} B_j^{n_j} ],
 *   A_j = c sum_i xi_i U_ij,   B_j = c sum_i xi~_i U*_ij,
 *
 * with (xi_i, xi~_i) ~ Normal(0, sigma) independently per input mode. The
 * expectation of the 2M linear forms is a sum over all (2M-1)!! perfect
 * matchings of pairwise covariances (Isserlis/Wick).
 *
 * Deliberately independent of trace_engine.hpp and precompute.hpp.
 */
#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "model.hpp"
#include "pattern.hpp"
#include "unitary.hpp"

namespace lgbs {

/// Largest total photon number the oracle accepts ((2M-1)!! = 10395).
inline constexpr unsigned oracle_max_photons = 6;

/// Zero-mean Gaussian linear form sum_i coeff_i v_i, where v is xi (tilde =
/// false) or xi~ (tilde = true).
struct GaussianForm {
    bool tilde = false;
    ComplexVector coeff;
};

/// Expectation of a product of Gaussian linear forms by perfect matchings.
class PairingSum {
  public:
    PairingSum(std::vector<GaussianForm> forms, PairCovariance cov)
        : forms_(std::move(forms)), cov_(cov) {
        const std::size_t m = forms_.size();
        pair_cov_.assign(m * m, Complex(0.0, 0.0));
        for (std::size_t a = 0; a < m; ++a) {
            for (std::size_t b = 0; b < m; ++b) {
                const double w = forms_[a].tilde == forms_[b].tilde ? cov_.diag : cov_.off;
                // Bilinear (no conjugation): E[xi_i xi_k] is real and diagonal in i.
                pair_cov_[a * m + b] =
                    w * (forms_[a].coeff.array() * forms_[b].coeff.array()).sum();
            }
        }
    }

    [[nodiscard]] std::size_t size() const { return forms_.size(); }

    struct Result {
        Complex value;
        double abs_scale; ///< sum over matchings of |product|
        std::uint64_t matchings;
    };

    /// Sum over all perfect matchings; zero matchings for an odd form count.
    [[nodiscard]] Result evaluate() const {
        Result r{Complex(0.0, 0.0), 0.0, 0};
        if (forms_.size() % 2 != 0) {
            return r;
        }
        std::vector<bool> used(forms_.size(), false);
        recurse(used, Complex(1.0, 0.0), r);
        return r;
    }

  private:
    void recurse(std::vector<bool> &used, Complex acc, Result &r) const {
        const std::size_t m = forms_.size();
        std::size_t first = 0;
        while (first < m && used[first]) {
            ++first;
        }
        if (first == m) {
            r.value += acc;
            r.abs_scale += std::abs(acc);
            ++r.matchings;
            return;
        }
        used[first] = true;
        for (std::size_t b = first + 1; b < m; ++b) {
            if (used[b]) {
                continue;
            }
            used[b] = true;
            recurse(used, acc * pair_cov_[first * m + b], r);
            used[b] = false;
        }
        used[first] = false;
    }

    std::vector<GaussianForm> forms_;
    PairCovariance cov_;
    std::vector<Complex> pair_cov_;
};

/// (2k-1)!! for 2k forms, by enumerating the matchings of identical forms.
[[nodiscard]] inline std::uint64_t count_matchings(std::size_t n_forms) {
    std::vector<GaussianForm> forms(n_forms, GaussianForm{false, ComplexVector::Ones(1)});
    return PairingSum(std::move(forms), PairCovariance{1.0, 0.0}).evaluate().matchings;
}

[[nodiscard]] inline double exact_probability(const UnitaryMatrix &u,
                                              const ModelParams &params,
                                              const OutputPattern &pattern) {
    const std::size_t n = u.size();
    if (pattern.modes() != n) {
        throw ParameterError("exact_probability: pattern length does not match N");
    }
    if (pattern.total() > oracle_max_photons) {
        throw ResourceLimitError("exact_probability: M = " +
                                 std::to_string(pattern.total()) +
                                 " exceeds the pairing budget M <= " +
                                 std::to_string(oracle_max_photons));
    }
    const ComplexMatrix &m = u.matrix();
    std::vector<GaussianForm> forms;
    double factorials = 1.0;
    for (std::size_t j = 0; j < n; ++j) {
        const auto col = static_cast<Eigen::Index>(j);
        for (unsigned k = 0; k < pattern[j]; ++k) {
            forms.push_back({false, params.c * m.col(col)});
            forms.push_back({true, params.c * m.col(col).conjugate()});
            factorials *= static_cast<double>(k + 1);
        }
    }
    const auto r = PairingSum(std::move(forms), params.sigma).evaluate();
    if (std::abs(r.value.imag()) > 1e-10 * (std::abs(r.value.real()) + r.abs_scale)) {
        throw NumericalError("exact_probability: expectation is not real (Im = " +
                             std::to_string(r.value.imag()) + ")");
    }
    return params.probability_scale(n) * r.value.real() / factorials;
}

/// Total probability of all patterns with at most `max_photons` photons.
[[nodiscard]] inline double normalization_check(const UnitaryMatrix &u,
                                                const ModelParams &params,
                                                unsigned max_photons) {
    if (max_photons > oracle_max_photons) {
        throw ResourceLimitError("normalization_check: max_photons must be <= " +
                                 std::to_string(oracle_max_photons));
    }
    double total = 0.0;
    for (unsigned photons = 0; photons <= max_photons; ++photons) {
        for (const auto &p : enumerate_patterns(u.size(), photons)) {
            total += exact_probability(u, params, p);
        }
    }
    return total;
}

} // namespace lgbs
