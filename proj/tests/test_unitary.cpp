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
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <Eigen/SVD>
#include <gtest/gtest.h>

#include "lgbs/unitary.hpp"

namespace lgbs {
namespace {

std::string temp_path(const std::string &name) {
    return (std::filesystem::temp_directory_path() / ("lgbs_test_" + name)).string();
}

void write_file(const std::string &path, const std::string &text) {
    std::ofstream(path) << text;
}

TEST(HaarRandom, SingleModeIsPhase) {
    for (std::uint64_t seed : {0ULL, 1ULL, 77ULL}) {
        const UnitaryMatrix u = haar_random(1, seed);
        EXPECT_NEAR(std::abs(u(0, 0)), 1.0, 1e-12);
    }
}

TEST(HaarRandom, UnitaryAndDeterministic) {
    const UnitaryMatrix u = haar_random(8, 42);
    EXPECT_LE(check_unitary(u), 1e-10);
    EXPECT_TRUE(u == haar_random(8, 42));
    EXPECT_FALSE(u == haar_random(8, 43));
}

TEST(HaarRandom, SingularValuesAreOne) {
    for (std::size_t n : {2U, 5U, 13U}) {
        const UnitaryMatrix u = haar_random(n, 1000 + n);
        Eigen::JacobiSVD<ComplexMatrix> svd(u.matrix());
        for (Eigen::Index k = 0; k < svd.singularValues().size(); ++k) {
            EXPECT_NEAR(svd.singularValues()(k), 1.0, 1e-10);
        }
    }
}

TEST(HaarRandom, ZeroModesRejected) { EXPECT_THROW((void)haar_random(0, 1), ParameterError); }

TEST(CheckUnitary, Residuals) {
    EXPECT_EQ(check_unitary(UnitaryMatrix::identity(4)), 0.0);
    const ComplexMatrix u = haar_random(4, 9).matrix();
    // Zeroed column: (U^dag U)_22 = 0.
    ComplexMatrix col = u;
    col.col(2).setZero();
    EXPECT_GE(check_unitary(UnitaryMatrix(col)), 1.0 - 1e-12);
    // Zeroed row r: U^dag U - I = -r^dag r, whose max entry is max_i |r_i|^2.
    ComplexMatrix row = u;
    row.row(2).setZero();
    const double rmax = u.row(2).cwiseAbs2().maxCoeff();
    EXPECT_NEAR(check_unitary(UnitaryMatrix(row)), rmax, 1e-12);
    EXPECT_GT(check_unitary(UnitaryMatrix(row)), unitarity_tolerance);
}

TEST(UnitaryFile, RoundTripIsBitExact) {
    const UnitaryMatrix u = haar_random(6, 123);
    const std::string path = temp_path("roundtrip.json");
    save(u, path);
    const UnitaryMatrix v = load_unitary(path);
    EXPECT_EQ((u.matrix() - v.matrix()).cwiseAbs().maxCoeff(), 0.0);
    EXPECT_TRUE(u == v);
    std::remove(path.c_str());
}

TEST(UnitaryFile, ColumnPermutationCommutesWithSaveLoad) {
    const UnitaryMatrix u = haar_random(5, 7);
    Eigen::PermutationMatrix<Eigen::Dynamic> perm(5);
    perm.indices() << 3, 0, 4, 1, 2;
    const UnitaryMatrix permuted(u.matrix() * perm);
    const std::string path = temp_path("perm.json");
    save(u, path);
    const UnitaryMatrix loaded_then_permuted(load_unitary(path).matrix() * perm);
    save(permuted, path);
    EXPECT_TRUE(loaded_then_permuted == load_unitary(path));
    std::remove(path.c_str());
}

TEST(UnitaryFile, NonSquareIsParseError) {
    const std::string path = temp_path("nonsquare.json");
    write_file(path, R"({"n": 2, "entries": [[[1,0],[0,0]], [[0,0]]]})");
    try {
        (void)load_unitary(path);
        FAIL() << "expected ParseError";
    } catch (const ParseError &e) {
        EXPECT_NE(std::string(e.what()).find("row 1"), std::string::npos) << e.what();
    }
    std::remove(path.c_str());
}

TEST(UnitaryFile, MalformedEntryNamesRowAndColumn) {
    const std::string path = temp_path("malformed.json");
    write_file(path, R"({"n": 2, "entries": [[[1,0],[0,0]], [[0,0],[1]]]})");
    try {
        (void)load_unitary(path);
        FAIL() << "expected ParseError";
    } catch (const ParseError &e) {
        const std::string msg = e.what();
        EXPECT_NE(msg.find("row 1"), std::string::npos) << msg;
        EXPECT_NE(msg.find("column 1"), std::string::npos) << msg;
    }
    write_file(path, "{not json");
    EXPECT_THROW((void)load_unitary(path), ParseError);
    EXPECT_THROW((void)load_unitary(temp_path("does_not_exist.json")), ParseError);
    std::remove(path.c_str());
}

TEST(UnitaryFile, NonUnitaryLoadsButFailsCheck) {
    const std::string path = temp_path("nonunitary.json");
    write_file(path, R"({"n": 2, "entries": [[[1,0],[1,0]], [[0,0],[1,0]]]})");
    const UnitaryMatrix u = load_unitary(path);
    EXPECT_GT(check_unitary(u), unitarity_tolerance);
    std::remove(path.c_str());
}

} // namespace
} // namespace lgbs
