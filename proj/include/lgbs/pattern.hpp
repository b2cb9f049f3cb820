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
 * @file pattern.hpp
 * Output photon-count patterns n = (n_1, ..., n_N).
 */
#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"

namespace lgbs {

class OutputPattern {
  public:
    OutputPattern() = default;
    explicit OutputPattern(std::vector<unsigned> counts)
        : counts_(std::move(counts)),
          total_(std::accumulate(counts_.begin(), counts_.end(), 0U)) {}

    [[nodiscard]] std::size_t modes() const { return counts_.size(); }
    [[nodiscard]] unsigned total() const { return total_; }
    [[nodiscard]] unsigned operator[](std::size_t j) const { return counts_[j]; }
    [[nodiscard]] const std::vector<unsigned> &counts() const { return counts_; }
    [[nodiscard]] unsigned max_count() const {
        return counts_.empty() ? 0U
                               : *std::max_element(counts_.begin(), counts_.end());
    }

    /// Indices j with n_j > 0.
    [[nodiscard]] std::vector<std::size_t> occupied() const {
        std::vector<std::size_t> out;
        for (std::size_t j = 0; j < counts_.size(); ++j) {
            if (counts_[j] > 0) {
                out.push_back(j);
            }
        }
        return out;
    }

    friend bool operator==(const OutputPattern &, const OutputPattern &) = default;

  private:
    std::vector<unsigned> counts_;
    unsigned total_ = 0;
};

/// "n1|n2|...|nN"; the separator keeps the field CSV-safe.
[[nodiscard]] inline std::string to_string(const OutputPattern &p) {
    std::string out;
    for (std::size_t j = 0; j < p.modes(); ++j) {
        if (j > 0) {
            out += '|';
        }
        out += std::to_string(p[j]);
    }
    return out;
}

/// Parses "1,0,1" or "1|0|1".
[[nodiscard]] inline OutputPattern parse_pattern(const std::string &text) {
    std::vector<unsigned> counts;
    std::string item;
    std::string normalized = text;
    std::replace(normalized.begin(), normalized.end(), '|', ',');
    std::istringstream in(normalized);
    while (std::getline(in, item, ',')) {
        std::size_t used = 0;
        long value = -1;
        try {
            value = std::stol(item, &used);
        } catch (const std::exception &) {
            used = 0;
        }
        if (used == 0 || used != item.size() || value < 0) {
            throw ParseError("pattern: invalid photon count '" + item + "' in '" +
                             text + "'");
        }
        counts.push_back(static_cast<unsigned>(value));
    }
    if (counts.empty()) {
        throw ParseError("pattern: empty pattern '" + text + "'");
    }
    return OutputPattern(std::move(counts));
}

namespace detail {
inline void compositions(std::vector<unsigned> &current, std::size_t pos,
                         unsigned left, std::vector<OutputPattern> &out) {
    if (pos + 1 == current.size()) {
        current[pos] = left;
        out.emplace_back(current);
        return;
    }
    for (unsigned k = left + 1; k-- > 0;) {
        current[pos] = k;
        compositions(current, pos + 1, left - k, out);
    }
}
} // namespace detail

/// All C(N+M-1, M) patterns of M photons in N modes, first mode descending:
/// (M,0,...), (M-1,1,...), ..., (0,...,M).
[[nodiscard]] inline std::vector<OutputPattern> enumerate_patterns(std::size_t modes,
                                                                   unsigned photons) {
    if (modes == 0) {
        throw ParameterError("enumerate_patterns: N must be >= 1");
    }
    std::vector<OutputPattern> out;
    std::vector<unsigned> current(modes, 0);
    detail::compositions(current, 0, photons, out);
    return out;
}

} // namespace lgbs
