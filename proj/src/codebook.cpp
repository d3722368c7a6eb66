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

#include "nfbeam/codebook.hpp"
#include "nfbeam/correlation.hpp"
#include "nfbeam/error.hpp"
#include "nfbeam/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace nfbeam {

namespace {

// Guards floor() against a product that should be an exact integer landing
// one ulp below it.
int floor_tolerant(double x)
{
    return static_cast<int>(std::floor(x + 1e-9 * std::max(1.0, std::abs(x))));
}

// (k d / pi) d N^2, the common scale of the range set.
double range_scale(const ArrayConfig& config)
{
    const double kd = wavenumber(config) * config.d_x;
    const double n = config.n_x;
    return kd / kPi * config.d_x * n * n;
}

double sin_theta(const ArrayConfig& config, int q)
{
    return 2.0 * kPi * q / (config.n_x * wavenumber(config) * config.d_x);
}

struct Peak {
    double x;
    std::size_t index;
};

// Intensity maximum; exact ties resolve to the mean tied position.
Peak locate_peak(const std::vector<double>& intensity, const SampledField& grid)
{
    const double top = *std::max_element(intensity.begin(), intensity.end());
    double sum = 0.0;
    std::size_t count = 0, first = 0;
    for (std::size_t i = 0; i < intensity.size(); ++i) {
        if (intensity[i] >= top * (1.0 - 1e-9)) {
            if (count == 0)
                first = i;
            sum += grid.x(i);
            ++count;
        }
    }
    return {sum / static_cast<double>(count), first};
}

double intensity_at(const std::vector<double>& intensity, const SampledField& grid, double x)
{
    const double u = (x - grid.origin_x) / grid.spacing_x;
    check(u >= 0.0 && u <= static_cast<double>(intensity.size() - 1), "user position outside the field grid");
    const std::size_t lo = std::min(static_cast<std::size_t>(u), intensity.size() - 2);
    const double t = u - static_cast<double>(lo);
    return intensity[lo] + t * (intensity[lo + 1] - intensity[lo]);
}

// Deepest minimum in the sample range (from, to], refined by a parabola
// through its neighbors.
double locate_null(const std::vector<double>& intensity, const SampledField& grid, double x_from, double x_to)
{
    const double a = (std::min(x_from, x_to) - grid.origin_x) / grid.spacing_x;
    const double b = (std::max(x_from, x_to) - grid.origin_x) / grid.spacing_x;
    check(a >= 1.0 && b <= static_cast<double>(intensity.size() - 2), "null search window outside the field grid");
    const auto lo = static_cast<std::size_t>(std::ceil(a));
    const auto hi = static_cast<std::size_t>(std::floor(b));
    check(lo <= hi, "null search window holds no samples");

    std::size_t best = lo;
    for (std::size_t i = lo; i <= hi; ++i)
        if (intensity[i] < intensity[best])
            best = i;

    const double left = intensity[best - 1];
    const double mid = intensity[best];
    const double right = intensity[best + 1];
    const double curvature = left - 2.0 * mid + right;
    double shift = 0.0;
    if (curvature > 0.0)
        shift = std::clamp(0.5 * (left - right) / curvature, -0.5, 0.5);
    return grid.x(best) + shift * grid.spacing_x;
}

} // namespace

int q_max(const ArrayConfig& config, double theta_max)
{
    config.validate();
    check(theta_max >= 0.0 && theta_max <= kPi / 2, "theta_max must lie in [0, pi/2]");
    const double kd = wavenumber(config) * config.d_x;
    return floor_tolerant(std::sin(theta_max) * config.n_x * kd / (2.0 * kPi));
}

std::vector<std::pair<int, double>> direction_set(const ArrayConfig& config, int q_max_value)
{
    config.validate();
    check(q_max_value >= 0, "q_max must be >= 0");
    std::vector<std::pair<int, double>> set;
    set.reserve(static_cast<std::size_t>(2 * q_max_value + 1));
    for (int q = -q_max_value; q <= q_max_value; ++q) {
        const double s = sin_theta(config, q);
        check(std::abs(s) <= 1.0, "direction index beyond endfire");
        set.emplace_back(q, std::asin(s));
    }
    return set;
}

int p_max(const ArrayConfig& config, double z_r, Parity parity)
{
    config.validate();
    check_positive(z_r, "z_r");
    const double ratio = range_scale(config) / (8.0 * z_r);
    return floor_tolerant(parity == Parity::even ? ratio : ratio + 0.5);
}

double range_zmax(const ArrayConfig& config, int p, Parity parity)
{
    config.validate();
    check(p >= 1, "range index p must be >= 1");
    const double scale = range_scale(config);
    return parity == Parity::even ? scale / (8.0 * p) : scale / (4.0 * (2 * p - 1));
}

std::vector<std::pair<int, double>> range_set(const ArrayConfig& config, int p_max_value, Parity parity)
{
    check(p_max_value >= 0, "p_max must be >= 0");
    std::vector<std::pair<int, double>> set;
    for (int p = 1; p <= p_max_value; ++p)
        set.emplace_back(p, range_zmax(config, p, parity));
    return set;
}

ModeEntry make_mode(const ArrayConfig& config, int q, int p)
{
    check(p >= 0, "range index p must be >= 0");
    check(p > 0 || parity_of(q) == Parity::even, "the infinite-range mode p = 0 needs an even q");
    const double s = sin_theta(config, q);
    check(std::abs(s) < 1.0, "direction index at or beyond endfire");

    ModeEntry mode;
    mode.q = q;
    mode.p = p;
    mode.theta = std::asin(s);
    mode.z_max = p == 0 ? kInfiniteRange : range_zmax(config, p, parity_of(q));
    mode.beam = BeamParams::cosine(mode.theta, mode.z_max);
    mode.beta = beta_x(config, mode.beam);
    return mode;
}

bool conflict(const ModeEntry& a, const ModeEntry& b)
{
    if (a.q == b.q && a.p == b.p)
        return false;
    const int dq = a.q - b.q;
    if (dq % 2 == 0)
        return std::abs(dq) == 2 * std::abs(a.p - b.p);
    const ModeEntry& e = parity_of(a.q) == Parity::even ? a : b;
    const ModeEntry& o = parity_of(a.q) == Parity::even ? b : a;
    return std::abs(e.q - o.q) == std::abs(2 * (e.p - o.p) + 1);
}

Codebook build_codebook(const ArrayConfig& config, double theta_max, double z_r, int workers)
{
    config.validate();
    check(config.is_ula(), "codebooks are built for the array's x axis; use a ULA config");
    // Range-grid zeros sit on the half-integer index grid.
    check(config.n_x % 2 == 0, "the orthogonal range grid needs an even element count");

    Codebook book;
    book.q_max = q_max(config, theta_max);
    book.p_max_even = p_max(config, z_r, Parity::even);
    book.p_max_odd = p_max(config, z_r, Parity::odd);

    for (const auto& [q, theta] : direction_set(config, book.q_max)) {
        const int top = parity_of(q) == Parity::even ? book.p_max_even : book.p_max_odd;
        for (int p = 1; p <= top; ++p)
            book.entries.push_back(make_mode(config, q, p));
    }
    book.m_max = static_cast<int>(book.entries.size());

    const std::size_t m = book.entries.size();
    std::vector<std::vector<std::size_t>> conflicts_of(m);
    std::vector<double> worst_orthogonal(m, 0.0);
    std::vector<double> weakest_conflict(m, 1.0);
    std::vector<std::size_t> pairs(m, 0);

    parallel_for(m, workers, [&](std::size_t i) {
        const ModeEntry& a = book.entries[i];
        for (std::size_t j = i + 1; j < m; ++j) {
            const ModeEntry& b = book.entries[j];
            const double c = cl_direct(detunings(config, a.beam, b.beam), config.n_x);
            if (conflict(a, b)) {
                conflicts_of[i].push_back(j);
                weakest_conflict[i] = std::min(weakest_conflict[i], c);
            } else {
                worst_orthogonal[i] = std::max(worst_orthogonal[i], c);
            }
            ++pairs[i];
        }
    });

    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j : conflicts_of[i])
            book.conflicts.emplace_back(i, j);
        book.verified_pairs += pairs[i];
        book.max_orthogonal_correlation = std::max(book.max_orthogonal_correlation, worst_orthogonal[i]);
        book.min_conflict_correlation = std::min(book.min_conflict_correlation, weakest_conflict[i]);
    }
    return book;
}

std::vector<ModeEntry> select_conflict_free(const Codebook& codebook, std::span<const std::size_t> order)
{
    std::vector<std::size_t> walk(order.begin(), order.end());
    if (walk.empty()) {
        walk.resize(codebook.entries.size());
        for (std::size_t i = 0; i < walk.size(); ++i)
            walk[i] = i;
    }

    std::vector<ModeEntry> kept;
    for (std::size_t i : walk) {
        check(i < codebook.entries.size(), "selection order index out of range");
        const ModeEntry& candidate = codebook.entries[i];
        const bool clash = std::any_of(kept.begin(), kept.end(), [&](const ModeEntry& k) {
            return (k.q == candidate.q && k.p == candidate.p) || conflict(k, candidate);
        });
        if (!clash)
            kept.push_back(candidate);
    }
    return kept;
}

SingleAntennaCodebook single_antenna_codebook(const ArrayConfig& config, std::span<const int> q_list)
{
    config.validate();
    check(config.is_ula(), "single_antenna_codebook requires a ULA config");

    SingleAntennaCodebook book;
    const double aperture = config.aperture(Axis::x);
    book.z_max = aperture * aperture / config.wavelength;
    book.probe_z = fraunhofer_distance(config) / 4.0;

    for (int q : q_list) {
        const double s = sin_theta(config, q);
        check(std::abs(s) < 1.0, "direction index at or beyond endfire");
        ModeEntry mode;
        mode.q = q;
        mode.theta = std::asin(s);
        mode.z_max = book.z_max;
        mode.beam = BeamParams::cosine(mode.theta, mode.z_max);
        mode.beta = beta_x(config, mode.beam);
        book.entries.push_back(mode);
    }
    const double beta = beta_from_zmax(config, book.z_max);
    book.null_offset = kPi / (2.0 * wavenumber(config) * beta);
    return book;
}

InterferenceMatrix interference_matrix(const ArrayConfig& config, const SingleAntennaCodebook& codebook,
                                       double probe_z, double pad_factor, int workers)
{
    check(!codebook.entries.empty(), "interference_matrix needs at least one mode");
    check_positive(probe_z, "probe distance");

    const std::size_t m = codebook.entries.size();
    std::vector<std::vector<double>> near(m), steer(m);
    SampledField grid;

    parallel_for(2 * m, workers, [&](std::size_t job) {
        const ModeEntry& mode = codebook.entries[job % m];
        const bool plain = job >= m;
        const BeamParams beam = plain ? BeamParams::steered(mode.theta) : mode.beam;
        const SampledField f = propagate(aperture_field(config, beam, pad_factor), probe_z);
        std::vector<double> intensity(f.samples.size());
        for (std::size_t i = 0; i < intensity.size(); ++i)
            intensity[i] = std::norm(f.samples[i]);
        (plain ? steer : near)[job % m] = std::move(intensity);
        if (job == 0) {
            grid = f;
            grid.samples.clear();
        }
    });

    InterferenceMatrix out;
    out.grid_spacing = grid.spacing_x;
    out.probe_z = probe_z;
    for (const ModeEntry& mode : codebook.entries)
        out.q.push_back(mode.q);

    auto fill = [&](const std::vector<std::vector<double>>& family, std::vector<double>& users,
                    std::vector<std::vector<double>>& ratio) {
        users.resize(m);
        for (std::size_t u = 0; u < m; ++u)
            users[u] = locate_peak(family[u], grid).x;
        ratio.assign(m, std::vector<double>(m, 0.0));
        for (std::size_t u = 0; u < m; ++u) {
            const double own = intensity_at(family[u], grid, users[u]);
            for (std::size_t i = 0; i < m; ++i)
                ratio[i][u] = i == u ? 1.0 : intensity_at(family[i], grid, users[u]) / own;
        }
    };
    fill(near, out.user_x_near_field, out.near_field);
    fill(steer, out.user_x_steering, out.steering);

    const double reach = 1.5 * codebook.null_offset;
    for (std::size_t u = 0; u < m; ++u) {
        const double x = out.user_x_near_field[u];
        out.null_offsets.emplace_back(locate_null(near[u], grid, x - reach, x - 0.5 * grid.spacing_x) - x,
                                      locate_null(near[u], grid, x + 0.5 * grid.spacing_x, x + reach) - x);
    }
    return out;
}

} // namespace nfbeam
