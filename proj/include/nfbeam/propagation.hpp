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

#ifndef NFBEAM_PROPAGATION_HPP
#define NFBEAM_PROPAGATION_HPP

#include "nfbeam/array_config.hpp"
#include "nfbeam/beamgen.hpp"

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace nfbeam {

inline constexpr double kDefaultPadFactor = 4.0;
inline constexpr std::size_t kDefaultMemoryBudget = std::size_t{2} << 30; // 2 GiB

/// Complex field on a uniform transverse grid at distance z.
///
/// Samples are row-major over (ny, nx); a 1D field (ULA, xz-plane
/// propagation) has ny == 1 and ignores the y metadata.
struct SampledField {
    std::vector<cplx> samples;
    std::size_t nx = 0;
    std::size_t ny = 1;
    double spacing_x = 0.0;
    double spacing_y = 0.0;
    double origin_x = 0.0;
    double origin_y = 0.0;
    double z = 0.0;
    double wavelength = kDefaultWavelength;

    bool is_2d() const { return ny > 1; }
    double x(std::size_t ix) const { return origin_x + static_cast<double>(ix) * spacing_x; }
    double y(std::size_t iy) const { return origin_y + static_cast<double>(iy) * spacing_y; }
    const cplx& at(std::size_t ix, std::size_t iy = 0) const { return samples[iy * nx + ix]; }

    /// Area (or length) element of one sample.
    double cell() const { return is_2d() ? spacing_x * spacing_y : spacing_x; }
    /// sum |E|^2 times the cell size.
    double energy() const;
};

enum class Excitation {
    phase,     // uniform amplitude, cosine-beam phase profile
    amplitude, // cos(k beta d n) amplitude, steering phase only
};

/// Field at z = 0: one sample per element at the element pitch, centered in
/// a zero-padded grid pad_factor times wider than the aperture on each axis.
/// Throws ValidationError for pad_factor < 1 and ResourceError when the grid
/// would exceed memory_budget bytes.
SampledField aperture_field(const ArrayConfig& config, const BeamParams& beam,
                            double pad_factor = kDefaultPadFactor,
                            Excitation excitation = Excitation::phase,
                            std::size_t memory_budget = kDefaultMemoryBudget);

/// Angular-spectrum propagation by `distance` meters: forward DFT, multiply
/// by exp(j k_z distance), inverse DFT. Evanescent bins (k_x^2 + k_y^2 > k^2)
/// are zeroed.
SampledField propagate(const SampledField& field, double distance);

/// Energy carried by the propagating part of the spectrum.
double propagating_energy(const SampledField& field);

/// sum a conj(b) times the cell size, in real space.
cplx spatial_inner_product(const SampledField& a, const SampledField& b);
/// Same inner product evaluated from the DFT spectra.
cplx spectral_inner_product(const SampledField& a, const SampledField& b);

/// Share of the field energy in samples within outer_fraction of the grid
/// width from any edge.
double edge_energy_fraction(const SampledField& field, double outer_fraction = 0.05);

/// Warning threshold for edge_energy_fraction at the default 5% border.
inline constexpr double kLeakThreshold = 1e-3;

/// Receiver aperture: element positions are center + pitch * index grid.
struct RxWindow {
    double center_x = 0.0;
    double center_y = 0.0;
    int count_x = 1;
    int count_y = 1;
    double pitch = kDefaultWavelength / 2;
    double z = 0.0;

    static RxWindow linear(double center_x, int count, double pitch, double z);
};

/// Field values at the receiver element positions (row-major over (y, x)).
/// Exact grid lookup when a position aligns with a sample, linear
/// (bilinear for 2D) interpolation otherwise. Throws ValidationError when
/// rx.z differs from field.z or the window reaches outside the grid.
std::vector<cplx> sample_rx(const SampledField& field, const RxWindow& rx);

/// Propagate both beams to rx.z and correlate the samples seen by the Rx.
double rx_correlation(const ArrayConfig& config, const BeamParams& beam1, const BeamParams& beam2,
                      const RxWindow& rx, double pad_factor = kDefaultPadFactor);

/// |E|^2 on the transverse grid at each requested distance (the y = 0 row
/// for planar arrays).
struct IntensityMap {
    std::vector<double> x;
    std::vector<double> z;
    std::vector<double> values; // row-major over (z, x)
    double max_edge_fraction = 0.0;

    double at(std::size_t iz, std::size_t ix) const { return values[iz * x.size() + ix]; }
};

IntensityMap intensity_map(const ArrayConfig& config, const BeamParams& beam, std::span<const double> z_samples,
                           double pad_factor = kDefaultPadFactor, int workers = 1);

/// Complex fields at each requested distance, all from the same aperture.
std::vector<SampledField> propagate_to(const SampledField& aperture, std::span<const double> z_samples, int workers = 1);

enum class SweepAxis { rx_size, z_offset, x_offset };

using BeamPair = std::pair<BeamParams, BeamParams>;

struct SweepRow {
    std::size_t pair_index = 0;
    double sweep_value = 0.0;
    double c_rx = 0.0;
    double c_tx = 0.0; // steering-vector correlation at the transmitter
    double edge_fraction = 0.0;
};

/// rx_correlation for every beam pair at every sweep value. rx_size values
/// are Rx element counts; z_offset and x_offset values are the absolute Rx
/// z distance and x center. Other Rx properties come from `base`.
std::vector<SweepRow> rx_sweep(const ArrayConfig& config, std::span<const BeamPair> pairs, SweepAxis axis,
                               std::span<const double> values, const RxWindow& base,
                               double pad_factor = kDefaultPadFactor, int workers = 1);

} // namespace nfbeam

#endif
