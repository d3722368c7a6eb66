// SPDX-License-Identifier: Apache-2.0
//
// nfbeam - near-field cosine beam design, propagation and NF-SDMA codebooks
// Copyright (C) 2026 The nfbeam authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef NFBEAM_ERROR_HPP
#define NFBEAM_ERROR_HPP

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace nfbeam {

// Non-physical or out-of-range input.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Grid would exceed the configured memory budget.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline void check(bool condition, const std::string& message)
{
    if (!condition)
        throw ValidationError(message);
}

inline void check_positive(double value, std::string_view name)
{
    if (!(value > 0.0) || !std::isfinite(value))
        throw ValidationError(std::string(name) + " must be a positive finite number");
}

inline void check_positive(int value, std::string_view name)
{
    if (value < 1)
        throw ValidationError(std::string(name) + " must be >= 1");
}

// Library warnings (approximation validity, energy leaking to the grid edge)
// go through a process-wide handler. The default handler prints to stderr.
using WarningHandler = std::function<void(std::string_view)>;

void set_warning_handler(WarningHandler handler);
void warn(std::string_view message);

} // namespace nfbeam

#endif
