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
 * @file unitary.hpp
 * Interferometer transmission matrices: Haar sampling, validation, and the
 * JSON file format {"n": N, "entries": [[[re, im], ...], ...]}.
 *
 * Row i is the input mode and column j the output mode:
 * a_i^dag = sum_j U_ij d_j^dag.
 */
#pragma once

#include <complex>
#include <cstdint>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include <Eigen/Dense>
#include <json.hpp>

#include "errors.hpp"

namespace lgbs {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Tolerance used by callers to accept a matrix as unitary.
inline constexpr double unitarity_tolerance = 1e-10;

class UnitaryMatrix {
  public:
    explicit UnitaryMatrix(ComplexMatrix entries) : m_(std::move(entries)) {
        if (m_.rows() < 1 || m_.rows() != m_.cols()) {
            throw ParameterError("unitary matrix must be square with n >= 1");
        }
    }

    [[nodiscard]] static UnitaryMatrix identity(std::size_t n) {
        return UnitaryMatrix(ComplexMatrix::Identity(static_cast<Eigen::Index>(n),
                                                     static_cast<Eigen::Index>(n)));
    }

    [[nodiscard]] std::size_t size() const {
        return static_cast<std::size_t>(m_.rows());
    }
    [[nodiscard]] const ComplexMatrix &matrix() const { return m_; }
    [[nodiscard]] Complex operator()(std::size_t in, std::size_t out) const {
        return m_(static_cast<Eigen::Index>(in), static_cast<Eigen::Index>(out));
    }

    friend bool operator==(const UnitaryMatrix &a, const UnitaryMatrix &b) {
        return a.m_.rows() == b.m_.rows() && a.m_ == b.m_;
    }

  private:
    ComplexMatrix m_;
};

/// Max-norm of U^dag U - I.
[[nodiscard]] inline double check_unitary(const UnitaryMatrix &u) {
    const auto &m = u.matrix();
    const ComplexMatrix residual =
        m.adjoint() * m - ComplexMatrix::Identity(m.rows(), m.cols());
    return residual.cwiseAbs().maxCoeff();
}

/**
 * Haar-distributed n x n unitary. A complex Ginibre matrix is QR-factorized
 * and each column of Q is multiplied by the phase of the matching diagonal
 * entry of R, which makes the factorization unique.
 */
[[nodiscard]] inline UnitaryMatrix haar_random(std::size_t n, std::uint64_t seed) {
    if (n == 0) {
        throw ParameterError("haar_random: n must be >= 1");
    }
    const auto dim = static_cast<Eigen::Index>(n);
    std::mt19937_64 engine(seed);
    std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
    ComplexMatrix z(dim, dim);
    for (Eigen::Index col = 0; col < dim; ++col) {
        for (Eigen::Index row = 0; row < dim; ++row) {
            const double re = normal(engine);
            const double im = normal(engine);
            z(row, col) = Complex(re, im);
        }
    }
    Eigen::HouseholderQR<ComplexMatrix> qr(z);
    ComplexMatrix q = qr.householderQ();
    const ComplexMatrix &r = qr.matrixQR();
    for (Eigen::Index j = 0; j < dim; ++j) {
        const Complex d = r(j, j);
        const double mag = std::abs(d);
        if (mag > 0.0) {
            q.col(j) *= d / mag;
        }
    }
    return UnitaryMatrix(std::move(q));
}

[[nodiscard]] inline nlohmann::json to_json(const UnitaryMatrix &u) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < u.size(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t j = 0; j < u.size(); ++j) {
            const Complex z = u(i, j);
            row.push_back({z.real(), z.imag()});
        }
        rows.push_back(std::move(row));
    }
    return {{"n", u.size()}, {"entries", std::move(rows)}};
}

/// Parse the unitary document. Unitarity is not checked here; use
/// check_unitary() on the result.
[[nodiscard]] inline UnitaryMatrix unitary_from_json(const nlohmann::json &doc) {
    if (!doc.is_object() || !doc.contains("entries")) {
        throw ParseError("unitary: expected an object with field \"entries\"");
    }
    const auto &rows = doc.at("entries");
    if (!rows.is_array() || rows.empty()) {
        throw ParseError("unitary: \"entries\" must be a non-empty array");
    }
    const std::size_t n = rows.size();
    if (doc.contains("n")) {
        const auto &declared = doc.at("n");
        if (!declared.is_number_unsigned() || declared.get<std::size_t>() != n) {
            throw ParseError("unitary: field \"n\" does not match the row count " +
                             std::to_string(n));
        }
    }
    const auto dim = static_cast<Eigen::Index>(n);
    ComplexMatrix m(dim, dim);
    for (std::size_t i = 0; i < n; ++i) {
        const auto &row = rows[i];
        if (!row.is_array() || row.size() != n) {
            throw ParseError("unitary: row " + std::to_string(i) +
                             " must hold exactly " + std::to_string(n) +
                             " entries (matrix is not square)");
        }
        for (std::size_t j = 0; j < n; ++j) {
            const auto &z = row[j];
            if (!z.is_array() || z.size() != 2 || !z[0].is_number() ||
                !z[1].is_number()) {
                throw ParseError("unitary: entry at row " + std::to_string(i) +
                                 ", column " + std::to_string(j) +
                                 " must be a [re, im] pair of numbers");
            }
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                Complex(z[0].get<double>(), z[1].get<double>());
        }
    }
    return UnitaryMatrix(std::move(m));
}

inline void save(const UnitaryMatrix &u, const std::string &path) {
    std::ofstream out(path);
    if (!out) {
        throw ParseError("unitary: cannot open " + path + " for writing");
    }
    out << to_json(u).dump(1) << '\n';
}

[[nodiscard]] inline UnitaryMatrix load_unitary(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("unitary: cannot open " + path);
    }
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::parse_error &e) {
        throw ParseError("unitary: " + path + ": " + e.what());
    }
    return unitary_from_json(doc);
}

} // namespace lgbs
