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
 * @file lgbs.hpp
 * Umbrella header.
 */
#pragma once

#include "analysis.hpp"
#include "errors.hpp"
#include "estimator.hpp"
#include "model.hpp"
#include "oracle.hpp"
#include "pattern.hpp"
#include "precompute.hpp"
#include "rng.hpp"
#include "trace_engine.hpp"
#include "unitary.hpp"
