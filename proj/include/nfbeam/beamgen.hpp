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

#ifndef NFBEAM_BEAMGEN_HPP
#define NFBEAM_BEAMGEN_HPP

#include "nfbeam/array_config.hpp"

#include <complex>
#include <limits>
#include <vector>

namespace nfbeam {

using cplx = std::complex<double>;

inline constexpr double kInfiniteRange = std::numeric_limits<double>::infinity();

/// Steering direction and convergence distances of one cosine beam.
///
/// A convergence distance of kInfiniteRange gives beta = 0, i.e. plain
/// linear steering. The y-axis distance only matters for planar arrays.
struct BeamParams {
    double theta = 0.0;             // polar steering angle, rad
    double phi = 0.0;               // azimuth, rad (0 steers in the xz-plane)
    double z_max_x = kInfiniteRange; // m
    double z_max_y = kInfiniteRange; // m

    /// Cosine beam converging at z_max on both transverse planes.
    static BeamParams cosine(double theta, double z_max, double phi = 0.0);
    /// Plain steering (beta = 0).
    static BeamParams steered(double theta, double phi = 0.0);
    /// 1D cosine beam on a UPA: converges along x only, invariant along y.
    static BeamParams cosine_1d(double theta, double z_max);

    void validate() const;
    double z_max(Axis axis) const { return axis == Axis::x ? z_max_x : z_max_y; }
};

/// Convergence slope N d / (2 z_max) on the given axis; 0 for an infinite
/// range. Throws ValidationError for z_max <= 0.
double beta_from_zmax(const ArrayConfig& config, double z_max, Axis axis = Axis::x);

double beta_x(const ArrayConfig& config, const BeamParams& beam);
double beta_y(const ArrayConfig& config, const BeamParams& beam);

/// False when a finite z_max is not larger than the aperture N d, where the
/// linear slope approximation stops tracking sin(psi).
bool slope_approximation_holds(const ArrayConfig& config, const BeamParams& beam);

/// Element phases k d sin(theta) n - k d beta |n| over the centered index
/// grid, unwrapped. Requires a ULA config.
std::vector<double> phase_profile_ula(const ArrayConfig& config, const BeamParams& beam);

/// Phases of a planar array, row-major over (n_y, n_x).
struct PhaseGrid {
    int n_x = 0;
    int n_y = 0;
    std::vector<double> values;

    double at(int ix, int iy) const { return values[static_cast<std::size_t>(iy) * n_x + ix]; }
};

PhaseGrid phase_profile_upa(const ArrayConfig& config, const BeamParams& beam);

/// Unit-norm excitation vector, row-major over (n_y, n_x) for planar arrays.
struct SteeringVector {
    std::vector<cplx> entries;

    std::size_t size() const { return entries.size(); }
    double norm() const;
};

/// e^{j phi(n)} / sqrt(element count) using the ULA or UPA phase profile.
SteeringVector steering_vector(const ArrayConfig& config, const BeamParams& beam);

/// Amplitude-mode cosine excitation cos(k beta d n), zero phase. Requires a
/// ULA config.
std::vector<double> amplitude_profile_cosine(const ArrayConfig& config, double beta);

} // namespace nfbeam

#endif
