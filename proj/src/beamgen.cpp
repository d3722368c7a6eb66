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

#include "nfbeam/beamgen.hpp"
#include "nfbeam/error.hpp"

#include <cmath>

namespace nfbeam {

BeamParams BeamParams::cosine(double theta, double z_max, double phi)
{
    BeamParams beam;
    beam.theta = theta;
    beam.phi = phi;
    beam.z_max_x = z_max;
    beam.z_max_y = z_max;
    beam.validate();
    return beam;
}

BeamParams BeamParams::steered(double theta, double phi)
{
    BeamParams beam;
    beam.theta = theta;
    beam.phi = phi;
    beam.validate();
    return beam;
}

BeamParams BeamParams::cosine_1d(double theta, double z_max)
{
    BeamParams beam;
    beam.theta = theta;
    beam.z_max_x = z_max;
    beam.validate();
    return beam;
}

void BeamParams::validate() const
{
    check(std::isfinite(theta) && std::abs(theta) < kPi / 2, "theta must satisfy |theta| < pi/2");
    check(std::isfinite(phi), "phi must be finite");
    check(z_max_x > 0.0, "z_max_x must be positive or infinite");
    check(z_max_y > 0.0, "z_max_y must be positive or infinite");
}

double beta_from_zmax(const ArrayConfig& config, double z_max, Axis axis)
{
    check(z_max > 0.0, "z_max must be positive or infinite");
    if (std::isinf(z_max))
        return 0.0;
    return config.aperture(axis) / (2.0 * z_max);
}

double beta_x(const ArrayConfig& config, const BeamParams& beam)
{
    return beta_from_zmax(config, beam.z_max_x, Axis::x);
}

double beta_y(const ArrayConfig& config, const BeamParams& beam)
{
    return beta_from_zmax(config, beam.z_max_y, Axis::y);
}

bool slope_approximation_holds(const ArrayConfig& config, const BeamParams& beam)
{
    if (std::isfinite(beam.z_max_x) && beam.z_max_x <= config.aperture(Axis::x))
        return false;
    if (!config.is_ula() && std::isfinite(beam.z_max_y) && beam.z_max_y <= config.aperture(Axis::y))
        return false;
    return true;
}

std::vector<double> phase_profile_ula(const ArrayConfig& config, const BeamParams& beam)
{
    config.validate();
    beam.validate();
    check(config.is_ula(), "phase_profile_ula requires n_y == 1");

    const double k = wavenumber(config);
    const double steer = k * config.d_x * std::sin(beam.theta);
    const double converge = k * config.d_x * beta_x(config, beam);

    const IndexGrid n = element_index_grid(config.n_x);
    std::vector<double> phase(n.size());
    for (std::size_t i = 0; i < n.size(); ++i)
        phase[i] = steer * n[i] - converge * std::abs(n[i]);
    return phase;
}

PhaseGrid phase_profile_upa(const ArrayConfig& config, const BeamParams& beam)
{
    config.validate();
    beam.validate();

    const double k = wavenumber(config);
    const double s = std::sin(beam.theta);
    const double steer_x = k * config.d_x * s * std::cos(beam.phi);
    const double steer_y = k * config.d_y * s * std::sin(beam.phi);
    const double conv_x = k * config.d_x * beta_x(config, beam);
    const double conv_y = k * config.d_y * beta_y(config, beam);

    const IndexGrid nx = element_index_grid(config.n_x);
    const IndexGrid ny = element_index_grid(config.n_y);

    PhaseGrid grid;
    grid.n_x = config.n_x;
    grid.n_y = config.n_y;
    grid.values.resize(config.element_count());
    for (std::size_t iy = 0; iy < ny.size(); ++iy) {
        const double row = steer_y * ny[iy] - conv_y * std::abs(ny[iy]);
        for (std::size_t ix = 0; ix < nx.size(); ++ix)
            grid.values[iy * nx.size() + ix] = steer_x * nx[ix] - conv_x * std::abs(nx[ix]) + row;
    }
    return grid;
}

double SteeringVector::norm() const
{
    double sum = 0.0;
    for (const cplx& e : entries)
        sum += std::norm(e);
    return std::sqrt(sum);
}

SteeringVector steering_vector(const ArrayConfig& config, const BeamParams& beam)
{
    const std::vector<double> phase =
        config.is_ula() ? phase_profile_ula(config, beam) : phase_profile_upa(config, beam).values;

    const double scale = 1.0 / std::sqrt(static_cast<double>(phase.size()));
    SteeringVector sv;
    sv.entries.resize(phase.size());
    for (std::size_t i = 0; i < phase.size(); ++i)
        sv.entries[i] = std::polar(scale, phase[i]);
    return sv;
}

std::vector<double> amplitude_profile_cosine(const ArrayConfig& config, double beta)
{
    config.validate();
    check(config.is_ula(), "amplitude_profile_cosine requires n_y == 1");
    check(std::isfinite(beta), "beta must be finite");

    const double kbd = wavenumber(config) * beta * config.d_x;
    const IndexGrid n = element_index_grid(config.n_x);
    std::vector<double> amplitude(n.size());
    for (std::size_t i = 0; i < n.size(); ++i)
        amplitude[i] = std::cos(kbd * n[i]);
    return amplitude;
}

} // namespace nfbeam
