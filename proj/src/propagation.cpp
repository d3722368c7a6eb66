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

#include "nfbeam/propagation.hpp"
#include "nfbeam/correlation.hpp"
#include "nfbeam/error.hpp"
#include "nfbeam/parallel.hpp"

#include "fft.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace nfbeam {

namespace {

using detail::FftDirection;
using detail::fft_inplace;

// Grid length holding `count` elements centered with equal zero padding on
// both sides; count and result have the same parity so elements sit on
// samples.
std::size_t padded_length(int count, double pad_factor)
{
    const double extra = (pad_factor - 1.0) * count / 2.0;
    return static_cast<std::size_t>(count) + 2 * static_cast<std::size_t>(std::ceil(extra - 1e-9));
}

// Angular frequency of DFT bin m on a grid of n samples at the given pitch.
double bin_frequency(std::size_t m, std::size_t n, double spacing)
{
    const double signed_m = m < (n + 1) / 2 ? static_cast<double>(m) : static_cast<double>(m) - static_cast<double>(n);
    return 2.0 * kPi * signed_m / (static_cast<double>(n) * spacing);
}

std::vector<double> bin_frequencies(std::size_t n, double spacing)
{
    std::vector<double> k(n);
    for (std::size_t m = 0; m < n; ++m)
        k[m] = bin_frequency(m, n, spacing);
    return k;
}

bool propagating(double kt2, double k2)
{
    return kt2 <= k2 * (1.0 + 1e-12);
}

std::vector<cplx> spectrum(const SampledField& field)
{
    std::vector<cplx> spec = field.samples;
    fft_inplace(spec, field.ny, field.nx, FftDirection::forward);
    return spec;
}

void check_same_grid(const SampledField& a, const SampledField& b)
{
    check(a.nx == b.nx && a.ny == b.ny && a.spacing_x == b.spacing_x && a.spacing_y == b.spacing_y,
          "fields are not on the same grid");
}

void warn_if_leaking(double fraction, double z)
{
    if (fraction > kLeakThreshold) {
        std::ostringstream os;
        os << "field at z = " << z << " m has " << fraction * 100.0
           << "% of its energy in the outer 5% of the grid; increase the pad factor";
        warn(os.str());
    }
}

// Fractional sample index of a coordinate; throws when outside the grid.
struct Bracket {
    std::size_t lo;
    double t; // weight of lo + 1; 0 for an exact hit
};

Bracket locate(double coord, double origin, double spacing, std::size_t n)
{
    const double u = (coord - origin) / spacing;
    const double nearest = std::round(u);
    if (std::abs(u - nearest) < 1e-9) {
        check(nearest >= 0.0 && nearest <= static_cast<double>(n - 1), "Rx extends beyond the padded field grid");
        return {static_cast<std::size_t>(nearest), 0.0};
    }
    check(u > 0.0 && u < static_cast<double>(n - 1), "Rx extends beyond the padded field grid");
    const double lo = std::floor(u);
    return {static_cast<std::size_t>(lo), u - lo};
}

cplx interpolate(const SampledField& field, const Bracket& bx, const Bracket& by)
{
    auto row = [&](std::size_t iy) {
        const cplx a = field.at(bx.lo, iy);
        return bx.t == 0.0 ? a : a + bx.t * (field.at(bx.lo + 1, iy) - a);
    };
    const cplx r0 = row(by.lo);
    return by.t == 0.0 ? r0 : r0 + by.t * (row(by.lo + 1) - r0);
}

} // namespace

double SampledField::energy() const
{
    double sum = 0.0;
    for (const cplx& s : samples)
        sum += std::norm(s);
    return sum * cell();
}

SampledField aperture_field(const ArrayConfig& config, const BeamParams& beam, double pad_factor,
                            Excitation excitation, std::size_t memory_budget)
{
    config.validate();
    beam.validate();
    check(pad_factor >= 1.0 && std::isfinite(pad_factor), "pad_factor must be >= 1");

    const std::size_t mx = padded_length(config.n_x, pad_factor);
    const std::size_t my = config.is_ula() ? 1 : padded_length(config.n_y, pad_factor);
    const double bytes = static_cast<double>(mx) * static_cast<double>(my) * sizeof(cplx);
    if (bytes > static_cast<double>(memory_budget)) {
        std::ostringstream os;
        os << "field grid " << mx << " x " << my << " (" << bytes / (1 << 20)
           << " MiB) exceeds the memory budget of " << memory_budget / (1 << 20) << " MiB";
        throw ResourceError(os.str());
    }

    SampledField field;
    field.nx = mx;
    field.ny = my;
    field.spacing_x = config.d_x;
    field.spacing_y = config.d_y;
    field.origin_x = -0.5 * static_cast<double>(mx - 1) * config.d_x;
    field.origin_y = config.is_ula() ? 0.0 : -0.5 * static_cast<double>(my - 1) * config.d_y;
    field.wavelength = config.wavelength;
    field.samples.assign(mx * my, cplx{});

    const std::size_t off_x = (mx - static_cast<std::size_t>(config.n_x)) / 2;
    const std::size_t off_y = (my - static_cast<std::size_t>(config.n_y)) / 2;

    std::vector<cplx> excite(config.element_count());
    if (excitation == Excitation::phase) {
        const std::vector<double> phase =
            config.is_ula() ? phase_profile_ula(config, beam) : phase_profile_upa(config, beam).values;
        for (std::size_t i = 0; i < phase.size(); ++i)
            excite[i] = std::polar(1.0, phase[i]);
    } else {
        // cos(k beta d n) per axis on top of the plain steering phase.
        BeamParams steer = beam;
        steer.z_max_x = kInfiniteRange;
        steer.z_max_y = kInfiniteRange;
        const std::vector<double> phase =
            config.is_ula() ? phase_profile_ula(config, steer) : phase_profile_upa(config, steer).values;
        const double k = wavenumber(config);
        const double ax = k * beta_x(config, beam) * config.d_x;
        const double ay = k * beta_y(config, beam) * config.d_y;
        const IndexGrid gx = element_index_grid(config.n_x);
        const IndexGrid gy = element_index_grid(config.n_y);
        for (std::size_t iy = 0; iy < gy.size(); ++iy) {
            const double amp_y = config.is_ula() ? 1.0 : std::cos(ay * gy[iy]);
            for (std::size_t ix = 0; ix < gx.size(); ++ix) {
                const std::size_t i = iy * gx.size() + ix;
                excite[i] = std::polar(std::cos(ax * gx[ix]) * amp_y, phase[i]);
            }
        }
    }

    const std::size_t nx = static_cast<std::size_t>(config.n_x);
    for (std::size_t iy = 0; iy < static_cast<std::size_t>(config.n_y); ++iy)
        std::copy_n(excite.begin() + static_cast<std::ptrdiff_t>(iy * nx), nx,
                    field.samples.begin() + static_cast<std::ptrdiff_t>((iy + off_y) * mx + off_x));
    return field;
}

SampledField propagate(const SampledField& field, double distance)
{
    check(distance >= 0.0 && std::isfinite(distance), "propagation distance must be >= 0");
    check(field.nx > 0 && field.samples.size() == field.nx * field.ny, "malformed field");

    SampledField out = field;
    out.z = field.z + distance;
    if (distance == 0.0)
        return out;

    const double k = 2.0 * kPi / field.wavelength;
    const double k2 = k * k;
    const std::vector<double> kx = bin_frequencies(field.nx, field.spacing_x);
    const std::vector<double> ky = field.is_2d() ? bin_frequencies(field.ny, field.spacing_y) : std::vector<double>{0.0};

    fft_inplace(out.samples, field.ny, field.nx, FftDirection::forward);

    const double scale = 1.0 / static_cast<double>(out.samples.size());
    for (std::size_t iy = 0; iy < field.ny; ++iy) {
        for (std::size_t ix = 0; ix < field.nx; ++ix) {
            cplx& s = out.samples[iy * field.nx + ix];
            const double kt2 = kx[ix] * kx[ix] + ky[iy] * ky[iy];
            if (!propagating(kt2, k2)) {
                s = 0.0;
                continue;
            }
            const double kz = std::sqrt(std::max(0.0, k2 - kt2));
            s *= std::polar(scale, kz * distance);
        }
    }

    fft_inplace(out.samples, field.ny, field.nx, FftDirection::inverse);
    return out;
}

double propagating_energy(const SampledField& field)
{
    const std::vector<cplx> spec = spectrum(field);
    const double k = 2.0 * kPi / field.wavelength;
    const std::vector<double> kx = bin_frequencies(field.nx, field.spacing_x);
    const std::vector<double> ky = field.is_2d() ? bin_frequencies(field.ny, field.spacing_y) : std::vector<double>{0.0};

    double sum = 0.0;
    for (std::size_t iy = 0; iy < field.ny; ++iy)
        for (std::size_t ix = 0; ix < field.nx; ++ix)
            if (propagating(kx[ix] * kx[ix] + ky[iy] * ky[iy], k * k))
                sum += std::norm(spec[iy * field.nx + ix]);
    return sum / static_cast<double>(spec.size()) * field.cell();
}

cplx spatial_inner_product(const SampledField& a, const SampledField& b)
{
    check_same_grid(a, b);
    cplx sum = 0.0;
    for (std::size_t i = 0; i < a.samples.size(); ++i)
        sum += a.samples[i] * std::conj(b.samples[i]);
    return sum * a.cell();
}

cplx spectral_inner_product(const SampledField& a, const SampledField& b)
{
    check_same_grid(a, b);
    const std::vector<cplx> sa = spectrum(a);
    const std::vector<cplx> sb = spectrum(b);
    cplx sum = 0.0;
    for (std::size_t i = 0; i < sa.size(); ++i)
        sum += sa[i] * std::conj(sb[i]);
    return sum / static_cast<double>(sa.size()) * a.cell();
}

double edge_energy_fraction(const SampledField& field, double outer_fraction)
{
    check(outer_fraction > 0.0 && outer_fraction < 0.5, "outer_fraction must be in (0, 0.5)");
    const auto border = [&](std::size_t n) {
        return static_cast<std::size_t>(std::ceil(outer_fraction * static_cast<double>(n)));
    };
    const std::size_t bx = border(field.nx);
    const std::size_t by = field.is_2d() ? border(field.ny) : 0;

    double total = 0.0, edge = 0.0;
    for (std::size_t iy = 0; iy < field.ny; ++iy) {
        const bool edge_row = field.is_2d() && (iy < by || iy >= field.ny - by);
        for (std::size_t ix = 0; ix < field.nx; ++ix) {
            const double e = std::norm(field.at(ix, iy));
            total += e;
            if (edge_row || ix < bx || ix >= field.nx - bx)
                edge += e;
        }
    }
    return total > 0.0 ? edge / total : 0.0;
}

RxWindow RxWindow::linear(double center_x, int count, double pitch, double z)
{
    RxWindow rx;
    rx.center_x = center_x;
    rx.count_x = count;
    rx.pitch = pitch;
    rx.z = z;
    return rx;
}

std::vector<cplx> sample_rx(const SampledField& field, const RxWindow& rx)
{
    check_positive(rx.count_x, "Rx element count");
    check_positive(rx.count_y, "Rx element count along y");
    check_positive(rx.pitch, "Rx pitch");
    check(std::abs(rx.z - field.z) <= 1e-9 * std::max(1.0, std::abs(field.z)), "Rx distance does not match the field distance");
    check(field.is_2d() || rx.count_y == 1, "a 1D field can only be sampled by a linear Rx");

    const IndexGrid gx = element_index_grid(rx.count_x);
    const IndexGrid gy = element_index_grid(rx.count_y);

    std::vector<Bracket> bx(gx.size());
    for (std::size_t i = 0; i < gx.size(); ++i)
        bx[i] = locate(rx.center_x + rx.pitch * gx[i], field.origin_x, field.spacing_x, field.nx);

    std::vector<Bracket> by(gy.size(), Bracket{0, 0.0});
    if (field.is_2d())
        for (std::size_t i = 0; i < gy.size(); ++i)
            by[i] = locate(rx.center_y + rx.pitch * gy[i], field.origin_y, field.spacing_y, field.ny);

    std::vector<cplx> out;
    out.reserve(gx.size() * gy.size());
    for (const Bracket& y : by)
        for (const Bracket& x : bx)
            out.push_back(interpolate(field, x, y));
    return out;
}

double rx_correlation(const ArrayConfig& config, const BeamParams& beam1, const BeamParams& beam2,
                      const RxWindow& rx, double pad_factor)
{
    check(rx.z >= 0.0, "Rx distance must be >= 0");
    const SampledField f1 = propagate(aperture_field(config, beam1, pad_factor), rx.z);
    const SampledField f2 = propagate(aperture_field(config, beam2, pad_factor), rx.z);
    warn_if_leaking(std::max(edge_energy_fraction(f1), edge_energy_fraction(f2)), rx.z);
    const std::vector<cplx> s1 = sample_rx(f1, rx);
    const std::vector<cplx> s2 = sample_rx(f2, rx);
    return correlate_vectors(s1, s2);
}

std::vector<SampledField> propagate_to(const SampledField& aperture, std::span<const double> z_samples, int workers)
{
    for (double z : z_samples)
        check(z >= aperture.z, "z samples must not precede the source plane");
    std::vector<SampledField> out(z_samples.size());
    parallel_for(z_samples.size(), workers,
                 [&](std::size_t i) { out[i] = propagate(aperture, z_samples[i] - aperture.z); });
    return out;
}

IntensityMap intensity_map(const ArrayConfig& config, const BeamParams& beam, std::span<const double> z_samples,
                           double pad_factor, int workers)
{
    check(std::is_sorted(z_samples.begin(), z_samples.end()), "z samples must be ascending");
    for (double z : z_samples)
        check(z >= 0.0, "z samples must be >= 0");

    const SampledField source = aperture_field(config, beam, pad_factor);

    IntensityMap map;
    map.x.resize(source.nx);
    for (std::size_t ix = 0; ix < source.nx; ++ix)
        map.x[ix] = source.x(ix);
    map.z.assign(z_samples.begin(), z_samples.end());
    map.values.resize(source.nx * z_samples.size());

    // y = 0 row: the lower of the two central rows on even grids.
    const std::size_t row = source.is_2d() ? (source.ny - 1) / 2 : 0;

    std::vector<double> edge(z_samples.size(), 0.0);
    parallel_for(z_samples.size(), workers, [&](std::size_t iz) {
        const SampledField f = propagate(source, z_samples[iz]);
        edge[iz] = edge_energy_fraction(f);
        for (std::size_t ix = 0; ix < f.nx; ++ix)
            map.values[iz * f.nx + ix] = std::norm(f.at(ix, row));
    });

    for (std::size_t iz = 0; iz < edge.size(); ++iz) {
        if (edge[iz] > map.max_edge_fraction)
            map.max_edge_fraction = edge[iz];
    }
    if (!edge.empty()) {
        const auto worst = std::max_element(edge.begin(), edge.end()) - edge.begin();
        warn_if_leaking(map.max_edge_fraction, map.z[static_cast<std::size_t>(worst)]);
    }
    return map;
}

std::vector<SweepRow> rx_sweep(const ArrayConfig& config, std::span<const BeamPair> pairs, SweepAxis axis,
                               std::span<const double> values, const RxWindow& base, double pad_factor, int workers)
{
    for (double v : values) {
        if (axis == SweepAxis::rx_size)
            check(v >= 1.0 && v == std::floor(v), "rx_size sweep values must be positive integers");
        if (axis == SweepAxis::z_offset)
            check(v >= 0.0, "z_offset sweep values must be >= 0");
    }

    std::vector<SweepRow> rows(pairs.size() * values.size());
    parallel_for(pairs.size(), workers, [&](std::size_t ip) {
        const BeamPair& pair = pairs[ip];
        const SampledField a1 = aperture_field(config, pair.first, pad_factor);
        const SampledField a2 = aperture_field(config, pair.second, pad_factor);
        const double c_tx =
            correlate_vectors(steering_vector(config, pair.first).entries, steering_vector(config, pair.second).entries);

        SampledField f1, f2;
        double edge = 0.0;
        auto propagate_pair = [&](double z) {
            f1 = propagate(a1, z);
            f2 = propagate(a2, z);
            edge = std::max(edge_energy_fraction(f1), edge_energy_fraction(f2));
        };
        if (axis != SweepAxis::z_offset)
            propagate_pair(base.z);

        for (std::size_t iv = 0; iv < values.size(); ++iv) {
            RxWindow rx = base;
            switch (axis) {
            case SweepAxis::rx_size: rx.count_x = static_cast<int>(values[iv]); break;
            case SweepAxis::x_offset: rx.center_x = values[iv]; break;
            case SweepAxis::z_offset:
                rx.z = values[iv];
                propagate_pair(rx.z);
                break;
            }
            SweepRow& row = rows[ip * values.size() + iv];
            row.pair_index = ip;
            row.sweep_value = values[iv];
            row.c_tx = c_tx;
            row.c_rx = correlate_vectors(sample_rx(f1, rx), sample_rx(f2, rx));
            row.edge_fraction = edge;
        }
    });

    double worst = 0.0;
    double worst_z = base.z;
    for (const SweepRow& r : rows) {
        if (r.edge_fraction > worst) {
            worst = r.edge_fraction;
            worst_z = axis == SweepAxis::z_offset ? r.sweep_value : base.z;
        }
    }
    warn_if_leaking(worst, worst_z);
    return rows;
}

} // namespace nfbeam
