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

#ifndef NFBEAM_ARRAY_CONFIG_HPP
#define NFBEAM_ARRAY_CONFIG_HPP

#include <cstddef>
#include <vector>

namespace nfbeam {

inline constexpr double kSpeedOfLight = 299792458.0; // m/s
inline constexpr double kPi = 3.14159265358979323846;

// 150 GHz carrier.
inline constexpr double kDefaultWavelength = 2e-3;

enum class Axis { x, y };

/// Uniform linear (n_y == 1) or planar array together with its carrier.
///
/// All lengths are in meters. The carrier is stored as a wavelength; use
/// wavelength_from_ghz() at the boundary when a frequency is given.
struct ArrayConfig {
    int n_x = 1;
    int n_y = 1;
    double d_x = kDefaultWavelength / 2;
    double d_y = kDefaultWavelength / 2;
    double wavelength = kDefaultWavelength;

    /// Half-wavelength ULA at the given carrier.
    static ArrayConfig ula(int n_x, double wavelength = kDefaultWavelength);
    /// Half-wavelength square-pitch UPA at the given carrier.
    static ArrayConfig upa(int n_x, int n_y, double wavelength = kDefaultWavelength);

    /// Throws ValidationError naming the offending field.
    void validate() const;

    bool is_ula() const { return n_y == 1; }
    std::size_t element_count() const { return static_cast<std::size_t>(n_x) * static_cast<std::size_t>(n_y); }
    int count(Axis axis) const { return axis == Axis::x ? n_x : n_y; }
    double pitch(Axis axis) const { return axis == Axis::x ? d_x : d_y; }
    double aperture(Axis axis) const { return count(axis) * pitch(axis); }
};

using IndexGrid = std::vector<double>;

/// Centered element indices {-(count-1)/2, ..., (count-1)/2}; half-integers
/// for even counts.
IndexGrid element_index_grid(int count);

double wavenumber(const ArrayConfig& config);

/// 2 D^2 / lambda with D the aperture along x.
double fraunhofer_distance(const ArrayConfig& config);

double wavelength_from_ghz(double frequency_ghz);

} // namespace nfbeam

#endif
