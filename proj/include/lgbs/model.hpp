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
 * @file model.hpp
 * Squeezing/loss parameters of a uniformly lossy Gaussian boson sampler and
 * every distribution constant the estimator and oracle derive from them.
 *
 * Each input mode carries the (unnormalized) squeezed vacuum
 * exp(alpha/2 (c a^dag + s b^dag)^2)|0>, with b an unobserved loss mode and
 * c^2 + s^2 = 1. After the two Hubbard-Stratonovich transforms and the
 * partial trace over b, every mode contributes a pair (xi, xi~) of zero-mean
 * Gaussians with covariance `sigma`. That pair is split as
 * xi = xi0 + chi, xi~ = xi0 + chi~ with xi0 independent of (chi, chi~) and
 * Cov(chi, chi~) = h.
 */
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <string>

#include "errors.hpp"

namespace lgbs {

/// Symmetric 2x2 covariance of (xi, xi~) for one mode.
struct PairCovariance {
    double diag = 0.0; ///< E[xi^2] = E[xi~^2]
    double off = 0.0;  ///< E[xi xi~]

    [[nodiscard]] double det() const { return diag * diag - off * off; }
};

struct ModelParams {
    double alpha = 0.0;
    double c = 1.0;
    double s = 0.0;
    PairCovariance sigma;
    double var_xi0 = 0.0;
    double var_chi = 0.0;
    double h = 0.0;
    double epsilon = 0.0;
    /// (det sigma)^{1/2} / alpha = 1 / sqrt(1 - alpha^2 s^4)
    double prefactor_per_mode = 1.0;
    /// sqrt(1 - alpha^2): normalizes exp(alpha/2 a^dag^2)|0>.
    double norm_per_mode = 1.0;

    [[nodiscard]] double loss_s2() const { return s * s; }
    [[nodiscard]] double transmission_c2() const { return c * c; }

    /// Total multiplicative constant for an N-mode probability.
    [[nodiscard]] double probability_scale(std::size_t modes) const {
        return std::pow(prefactor_per_mode * norm_per_mode,
                        static_cast<double>(modes));
    }
};

namespace detail {

inline void require(bool ok, const std::string &what) {
    if (!ok) {
        throw ParameterError(what);
    }
}

/// 1 / (1/alpha + s^2), written without dividing by alpha.
inline double chi_scale(double alpha, double s2) {
    return alpha / (1.0 + alpha * s2);
}

} // namespace detail

/// Admissible interval for Cov(chi, chi~): xi0 variance and both eigenvalues
/// var_chi +- h of the (chi, chi~) block must stay non-negative.
struct HInterval {
    double lo;
    double hi;
};

[[nodiscard]] inline HInterval admissible_h(double alpha, double loss_s2) {
    const double den = 1.0 - alpha * alpha * loss_s2 * loss_s2;
    return {-0.5 * detail::chi_scale(alpha, loss_s2),
            alpha * alpha * loss_s2 / den};
}

/**
 * Derive all distribution constants for squeezing `alpha` and loss level
 * `loss_s2` (= s^2). `h` defaults to the value minimizing the perturbation
 * parameter, -1/2 * 1/(1/alpha + s^2); an override must lie inside
 * admissible_h().
 */
[[nodiscard]] inline ModelParams
derive_params(double alpha, double loss_s2,
              std::optional<double> h_override = std::nullopt) {
    detail::require(std::isfinite(alpha) && alpha >= 0.0 && alpha < 1.0,
                    "alpha must satisfy 0 <= alpha < 1");
    detail::require(std::isfinite(loss_s2) && loss_s2 >= 0.0 && loss_s2 <= 1.0,
                    "loss_s2 must satisfy 0 <= loss_s2 <= 1");

    ModelParams p;
    p.alpha = alpha;
    p.s = std::sqrt(loss_s2);
    p.c = std::sqrt(1.0 - loss_s2);

    const double den = 1.0 - alpha * alpha * loss_s2 * loss_s2;
    p.sigma.diag = alpha / den;
    p.sigma.off = alpha * alpha * loss_s2 / den;

    const HInterval range = admissible_h(alpha, loss_s2);
    double h = range.lo;
    if (h_override) {
        detail::require(std::isfinite(*h_override) &&
                            *h_override >= range.lo && *h_override <= range.hi,
                        "h override outside the admissible interval");
        h = *h_override;
    }
    p.h = h;
    p.var_chi = detail::chi_scale(alpha, loss_s2) + h;
    p.var_xi0 = p.sigma.off - h;
    // Rounding at the interval ends must not produce tiny negative variances.
    p.var_chi = std::max(p.var_chi, 0.0);
    p.var_xi0 = std::max(p.var_xi0, 0.0);

    p.epsilon = p.transmission_c2() * std::max(p.var_chi, std::abs(h));
    p.prefactor_per_mode = 1.0 / std::sqrt(den);
    p.norm_per_mode = std::sqrt(1.0 - alpha * alpha);
    return p;
}

struct ExperimentPoint {
    double alpha;
    double epsilon;
};

/// Squeezing and perturbation parameter for an experiment reporting
/// `mean_photons_per_mode` = sinh^2 r and overall transmission c^2.
[[nodiscard]] inline ExperimentPoint
params_from_experiment(double mean_photons_per_mode, double transmission_c2) {
    detail::require(std::isfinite(mean_photons_per_mode) &&
                        mean_photons_per_mode >= 0.0,
                    "mean photon number must be non-negative");
    detail::require(std::isfinite(transmission_c2) && transmission_c2 >= 0.0 &&
                        transmission_c2 <= 1.0,
                    "transmission must satisfy 0 <= c^2 <= 1");
    const double r = std::asinh(std::sqrt(mean_photons_per_mode));
    const double alpha = std::tanh(r);
    const double s2 = 1.0 - transmission_c2;
    return {alpha, 0.5 * transmission_c2 * detail::chi_scale(alpha, s2)};
}

/// Mean photon number of a single-mode squeezed vacuum with tanh r = alpha.
[[nodiscard]] inline double mean_photons_for_alpha(double alpha) {
    const double s = std::sinh(std::atanh(alpha));
    return s * s;
}

} // namespace lgbs
