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
#include <gtest/gtest.h>

#include "lgbs/precompute.hpp"

namespace lgbs {
namespace {

TEST(BuildTables, Identity) {
    const UnitaryMatrix u = UnitaryMatrix::identity(3);
    const PrecomputeTables t = build_tables(u, OutputPattern({1, 0, 1}));
    EXPECT_TRUE(t.t2.isIdentity(0.0));
    EXPECT_TRUE(t.m2.isIdentity(0.0));
    for (std::size_t k = 0; k < 3; ++k)
        for (std::size_t l = 0; l < 3; ++l)
            for (std::size_t m = 0; m < 3; ++m)
                for (std::size_t n = 0; n < 3; ++n) {
                    const double expect = (k == l && l == m && m == n) ? 1.0 : 0.0;
                    EXPECT_EQ(t.q4(k, l, m, n), Complex(expect, 0.0));
                }
}

TEST(BuildTables, MixedContractionIsIdentityForUnitary) {
    const UnitaryMatrix u = haar_random(7, 3);
    const PrecomputeTables t = build_contractions(u, 2);
    EXPECT_LE((t.m2 - ComplexMatrix::Identity(7, 7)).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(BuildTables, PatternLengthMismatch) {
    EXPECT_THROW((void)build_tables(haar_random(3, 1), OutputPattern({1, 1})), ParameterError);
}

// Independent loop-nest recomputation, N <= 4.
TEST(BuildTables, MatchesLoopNest) {
    for (std::size_t n = 1; n <= 4; ++n) {
        const UnitaryMatrix u = haar_random(n, 50 + n);
        const PrecomputeTables t = build_contractions(u, 3);
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t k = 0; k < n; ++k) {
                Complex tt(0.0, 0.0);
                Complex mm(0.0, 0.0);
                for (std::size_t i = 0; i < n; ++i) {
                    tt += u(i, j) * u(i, k);
                    mm += u(i, j) * std::conj(u(i, k));
                }
                const auto ej = static_cast<Eigen::Index>(j);
                const auto ek = static_cast<Eigen::Index>(k);
                EXPECT_LE(std::abs(t.t2(ej, ek) - tt), 1e-14);
                EXPECT_LE(std::abs(t.m2(ej, ek) - mm), 1e-14);
            }
        }
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t l = 0; l < n; ++l)
                for (std::size_t m = 0; m < n; ++m)
                    for (std::size_t nn = 0; nn < n; ++nn) {
                        Complex q(0.0, 0.0);
                        for (std::size_t i = 0; i < n; ++i)
                            q += u(i, k) * u(i, l) * std::conj(u(i, m)) * std::conj(u(i, nn));
                        EXPECT_LE(std::abs(t.q4(k, l, m, nn) - q), 1e-14);
                    }
    }
}

TEST(BuildTables, Symmetries) {
    const std::size_t n = 5;
    const UnitaryMatrix u = haar_random(n, 99);
    const PrecomputeTables t = build_contractions(u, 1);
    EXPECT_LE((t.t2 - t.t2.transpose()).cwiseAbs().maxCoeff(), 1e-14);
    EXPECT_LE((t.m2 - t.m2.adjoint()).cwiseAbs().maxCoeff(), 1e-14);
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l)
            for (std::size_t m = 0; m < n; ++m)
                for (std::size_t nn = 0; nn < n; ++nn) {
                    const Complex q = t.q4(k, l, m, nn);
                    EXPECT_LE(std::abs(q - t.q4(l, k, m, nn)), 1e-14);
                    EXPECT_LE(std::abs(q - t.q4(k, l, nn, m)), 1e-14);
                    EXPECT_LE(std::abs(q - std::conj(t.q4(m, nn, k, l))), 1e-14);
                }
}

TEST(FactorialTable, Rows) {
    const FactorialTable f(2);
    EXPECT_EQ(f(2, 0), 1.0);
    EXPECT_EQ(f(2, 1), 2.0);
    EXPECT_EQ(f(2, 2), 2.0);
    EXPECT_EQ(f(1, 2), 0.0);
    EXPECT_EQ(f(0, 1), 0.0);
    EXPECT_EQ(f(0, 0), 1.0);
}

TEST(FactorialTable, Recurrence) {
    const FactorialTable f(12);
    for (unsigned m = 0; m <= 12; ++m) {
        EXPECT_EQ(f(m, 0), 1.0);
        if (m >= 1) {
            EXPECT_EQ(f(m, 1), static_cast<double>(m));
        }
        for (unsigned p = 1; p <= m; ++p) EXPECT_EQ(f(m, p), (m - p + 1) * f(m, p - 1));
        for (unsigned p = m + 1; p <= 12; ++p) EXPECT_EQ(f(m, p), 0.0);
    }
    EXPECT_EQ(f.factorial(5), 120.0);
    // Lookups beyond the table fall back to direct products.
    EXPECT_EQ(f(15, 2), 210.0);
    EXPECT_EQ(f(3, 15), 0.0);
}

} // namespace
} // namespace lgbs
