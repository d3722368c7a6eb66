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

#include "nfbeam/array_config.hpp"
#include "nfbeam/error.hpp"

#include <iostream>
#include <mutex>

namespace nfbeam {

namespace {

std::mutex& warning_mutex()
{
    static std::mutex m;
    return m;
}

WarningHandler& warning_handler()
{
    static WarningHandler handler = [](std::string_view message) {
        std::cerr << "warning: " << message << '\n';
    };
    return handler;
}

} // namespace

void set_warning_handler(WarningHandler handler)
{
    std::lock_guard lock(warning_mutex());
    warning_handler() = std::move(handler);
}

void warn(std::string_view message)
{
    std::lock_guard lock(warning_mutex());
    if (warning_handler())
        warning_handler()(message);
}

ArrayConfig ArrayConfig::ula(int n_x, double wavelength)
{
    return upa(n_x, 1, wavelength);
}

ArrayConfig ArrayConfig::upa(int n_x, int n_y, double wavelength)
{
    ArrayConfig config;
    config.n_x = n_x;
    config.n_y = n_y;
    config.wavelength = wavelength;
    config.d_x = wavelength / 2;
    config.d_y = wavelength / 2;
    config.validate();
    return config;
}

void ArrayConfig::validate() const
{
    check_positive(n_x, "n_x");
    check_positive(n_y, "n_y");
    check_positive(d_x, "d_x");
    check_positive(d_y, "d_y");
    check_positive(wavelength, "wavelength");
}

IndexGrid element_index_grid(int count)
{
    check_positive(count, "element count");
    IndexGrid grid(static_cast<std::size_t>(count));
    const double first = -(count - 1) / 2.0;
    for (int i = 0; i < count; ++i)
        grid[static_cast<std::size_t>(i)] = first + i;
    return grid;
}

double wavenumber(const ArrayConfig& config)
{
    check_positive(config.wavelength, "wavelength");
    return 2.0 * kPi / config.wavelength;
}

double fraunhofer_distance(const ArrayConfig& config)
{
    config.validate();
    const double aperture = config.n_x * config.d_x;
    return 2.0 * aperture * aperture / config.wavelength;
}

double wavelength_from_ghz(double frequency_ghz)
{
    check_positive(frequency_ghz, "frequency");
    return kSpeedOfLight / (frequency_ghz * 1e9);
}

} // namespace nfbeam
