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
 * @file precompute.hpp
 * Per-unitary contraction tables and per-pattern factorial fractions. These
 * are built once and shared read-only by every Monte Carlo sample.
 */
#pragma once

#include <cstddef>
#include <vector>

#include "pattern.hpp"
#include "unitary.hpp"

namespace lgbs {

/// F^m_p = m! / (m-p)! for 0 <= p, m <= max_m, with F^m_p = 0 when p > m.
class FactorialTable {
  public:
    FactorialTable() : FactorialTable(0) {}
    explicit FactorialTable(unsigned max_m)
        : width_(max_m + 1), values_(width_ * width_, 0.0) {
        for (std::size_t m = 0; m < width_; ++m) {
            double f = 1.0;
            at(m, 0) = f;
            for (std::size_t p = 1; p <= m; ++p) {
                f *= static_cast<double>(m - p + 1);
                at(m, p) = f;
            }
        }
    }

    [[nodiscard]] unsigned max_m() const { return static_cast<unsigned>(width_ - 1); }

    [[nodiscard]] double operator()(unsigned m, unsigned p) const {
        if (m >= width_ || p >= width_) {
            return p > m ? 0.0 : extend(m, p);
        }
        return values_[m * width_ + p];
    }

    /// m! (= F^m_m).
    [[nodiscard]] double factorial(unsigned m) const { return (*this)(m, m); }

  private:
    double &at(std::size_t m, std::size_t p) { return values_[m * width_ + p]; }

    static double extend(unsigned m, unsigned p) {
        double f = 1.0;
        for (unsigned k = 0; k < p; ++k) {
            f *= static_cast<double>(m - k);
        }
        return f;
    }

    std::size_t width_;
    std::vector<double> values_;
};

/// Dense rank-4 tensor Q_klmn = sum_i U_ik U_il U*_im U*_in.
class Rank4Table {
  public:
    Rank4Table() = default;
    explicit Rank4Table(std::size_t n) : n_(n), data_(n * n * n * n) {}

    [[nodiscard]] std::size_t size() const { return n_; }
    [[nodiscard]] Complex operator()(std::size_t k, std::size_t l, std::size_t m,
                                     std::size_t n) const {
        return data_[index(k, l, m, n)];
    }
    Complex &operator()(std::size_t k, std::size_t l, std::size_t m, std::size_t n) {
        return data_[index(k, l, m, n)];
    }

  private:
    [[nodiscard]] std::size_t index(std::size_t k, std::size_t l, std::size_t m,
                                    std::size_t n) const {
        return ((k * n_ + l) * n_ + m) * n_ + n;
    }

    std::size_t n_ = 0;
    std::vector<Complex> data_;
};

struct PrecomputeTables {
    ComplexMatrix t2; ///< T_jk = sum_i U_ij U_ik
    ComplexMatrix m2; ///< M_jk = sum_i U_ij U*_ik (identity for unitary U)
    Rank4Table q4;
    FactorialTable factorials;

    [[nodiscard]] std::size_t modes() const { return static_cast<std::size_t>(t2.rows()); }
};

/// Contractions of U with itself; the O(N^5) rank-4 build dominates.
[[nodiscard]] inline PrecomputeTables build_contractions(const UnitaryMatrix &u,
                                                         unsigned max_occupancy) {
    const ComplexMatrix &m = u.matrix();
    const std::size_t n = u.size();
    PrecomputeTables t;
    t.t2 = m.transpose() * m;
    t.m2 = m.transpose() * m.conjugate();

    // Q_klmn = sum_i P_i(k,l) conj(P_i(m,n)) with P_i(k,l) = U_ik U_il.
    const auto dim = static_cast<Eigen::Index>(n);
    ComplexMatrix pairs(dim * dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        for (Eigen::Index k = 0; k < dim; ++k) {
            for (Eigen::Index l = 0; l < dim; ++l) {
                pairs(k * dim + l, i) = m(i, k) * m(i, l);
            }
        }
    }
    const ComplexMatrix q = pairs * pairs.adjoint();
    t.q4 = Rank4Table(n);
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t l = 0; l < n; ++l) {
            const auto row = static_cast<Eigen::Index>(k * n + l);
            for (std::size_t a = 0; a < n; ++a) {
                for (std::size_t b = 0; b < n; ++b) {
                    t.q4(k, l, a, b) = q(row, static_cast<Eigen::Index>(a * n + b));
                }
            }
        }
    }
    t.factorials = FactorialTable(max_occupancy);
    return t;
}

[[nodiscard]] inline PrecomputeTables build_tables(const UnitaryMatrix &u,
                                                   const OutputPattern &pattern) {
    if (pattern.modes() != u.size()) {
        throw ParameterError("build_tables: pattern length does not match N");
    }
    return build_contractions(u, pattern.max_count());
}

} // namespace lgbs
