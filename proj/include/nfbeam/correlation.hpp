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

#ifndef NFBEAM_CORRELATION_HPP
#define NFBEAM_CORRELATION_HPP

#include "nfbeam/array_config.hpp"
#include "nfbeam/beamgen.hpp"

#include <span>
#include <vector>

namespace nfbeam {

/// Per-index phase detunings between two ULA beams, in radians per element
/// index (already multiplied by k d).
struct Detunings {
    double w_theta = 0.0;
    double w_z = 0.0;
};

/// Per-axis detunings of two planar-array beams.
struct PlanarDetunings {
    double w_theta_x = 0.0;
    double w_theta_y = 0.0;
    double w_z_x = 0.0;
    double w_z_y = 0.0;

    Detunings x() const { return {w_theta_x, w_z_x}; }
    Detunings y() const { return {w_theta_y, w_z_y}; }
};

/// |cos w_z - cos w_theta| below this is treated as a pole of the closed form.
inline constexpr double kPoleTolerance = 1e-9;

/// |<a, b>| / (|a| |b|). Throws ValidationError on length mismatch or an
/// all-zero input.
double correlate_vectors(std::span<const cplx> a, std::span<const cplx> b);

Detunings detunings(const ArrayConfig& config, const BeamParams& beam1, const BeamParams& beam2);
PlanarDetunings planar_detunings(const ArrayConfig& config, const BeamParams& beam1, const BeamParams& beam2);

/// Brute-force ULA correlation |(1/N) sum_n exp(j w_theta n + j w_z |n|)|
/// over the centered index grid. Valid for any count.
double cl_direct(Detunings w, int count);

/// Closed-form ULA correlation for even counts. Uses the w_theta = 0 and
/// w_z = 0 special forms when one detuning vanishes, the general form
/// otherwise, and falls back to cl_direct within kPoleTolerance of a pole.
/// Throws ValidationError for odd counts.
double cl_closed(Detunings w, int count);

/// General form only: (1/N) sqrt(C_A + C_B + C_C) / |cos w_z - cos w_theta|.
/// No pole handling; the caller keeps away from cos w_z == cos w_theta.
double cl_general(Detunings w, int count);

/// Same steering angle: |sin(N w_z / 4)| / ((N/2) |sin(w_z / 2)|); 1 at w_z = 0,
/// cl_direct within kPoleTolerance of the other denominator nulls.
double cl_same_angle(double w_z, int count);

/// Same convergence distance: |sin(N w_theta / 2)| / (N |sin(w_theta / 2)|); 1 at
/// w_theta = 0, cl_direct near the other denominator nulls.
double cl_same_range(double w_theta, int count);

/// Planar correlation as the product of per-axis ULA correlations. Even
/// axis counts use cl_closed, odd ones cl_direct.
double cp(const PlanarDetunings& w, int n_x, int n_y);

/// Brute-force planar correlation (double sum). Test oracle for cp().
double cp_direct(const PlanarDetunings& w, int n_x, int n_y);

/// Convergence detunings 4 pi p / N for p in [p_first, p_last], skipping
/// p = 0 and multiples of N/2 (denominator nulls where C = 1).
std::vector<double> zero_set_wz(int count, int p_first, int p_last);

/// Convergence distance orthogonal to a beam converging at z_ref on the same
/// axis, for the given non-zero integer p. Returns z_ref for p = 0. Throws
/// std::domain_error when no finite positive partner exists.
double zmax_partner(const ArrayConfig& config, double z_ref, int p);

/// Correlation magnitudes on a grid of normalized detunings w / (k d).
struct CorrelationMap {
    std::vector<double> w_theta_over_kd;
    std::vector<double> w_z_over_kd;
    std::vector<double> magnitude; // row-major, rows over w_z, columns over w_theta

    double at(std::size_t iz, std::size_t itheta) const { return magnitude[iz * w_theta_over_kd.size() + itheta]; }
};

/// Symmetric grid values max * i / half for i in [-half, half].
std::vector<double> symmetric_axis(double max, int half);

CorrelationMap correlation_map(int count, double kd, std::span<const double> w_theta_over_kd,
                               std::span<const double> w_z_over_kd, int workers = 1);

} // namespace nfbeam

#endif
