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
 * @file errors.hpp
 * Exception types shared by all lgbs modules.
 */
#pragma once

#include <stdexcept>
#include <string>

namespace lgbs {

/// Argument outside the mathematical domain of an operation.
class ParameterError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// Malformed unitary or config document.
class ParseError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Request exceeds a hard computational budget (e.g. oracle pairing count).
class ResourceLimitError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class UnsupportedOrderError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Numerical invariant violated at run time (e.g. residual imaginary part).
class NumericalError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

} // namespace lgbs
