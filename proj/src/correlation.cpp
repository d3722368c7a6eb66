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

#include "nfbeam/correlation.hpp"
#include "nfbeam/error.hpp"
#include "nfbeam/parallel.hpp"

#include <cmath>
#include <stdexcept>

namespace nfbeam {

namespace {

using lcplx = std::complex<long double>;

bool is_even(int n) { return n % 2 == 0; }

} // namespace

double correlate_vectors(std::span<const cplx> a, std::span<const cplx> b)
{
    check(a.size() == b.size(), "correlate_vectors: length mismatch");
    check(!a.empty(), "correlate_vectors: empty input");

    // <a, b> = sum conj(a) b; accumulated in extended precision so that
    // UPA-sized vectors keep 1e-12 agreement with the per-axis closed forms.
    lcplx inner = 0;
    long double norm_a = 0, norm_b = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const lcplx ai(a[i].real(), a[i].imag());
        const lcplx bi(b[i].real(), b[i].imag());
        inner += std::conj(ai) * bi;
        norm_a += std::norm(ai);
        norm_b += std::norm(bi);
    }
    check(norm_a > 0 && norm_b > 0, "correlate_vectors: all-zero input");
    return static_cast<double>(std::abs(inner) / std::sqrt(norm_a * norm_b));
}

Detunings detunings(const ArrayConfig& config, const BeamParams& beam1, const BeamParams& beam2)
{
    const double kd = wavenumber(config) * config.d_x;
    return {kd * (std::sin(beam1.theta) - std::sin(beam2.theta)),
            kd * (beta_x(config, beam1) - beta_x(config, beam2))};
}

PlanarDetunings planar_detunings(const ArrayConfig& config, const BeamParams& beam1, const BeamParams& beam2)
{
    const double k = wavenumber(config);
    const double kdx = k * config.d_x;
    const double kdy = k * config.d_y;
    const double s1 = std::sin(beam1.theta);
    const double s2 = std::sin(beam2.theta);

    PlanarDetunings w;
    w.w_theta_x = kdx * (s1 * std::cos(beam1.phi) - s2 * std::cos(beam2.phi));
    w.w_theta_y = kdy * (s1 * std::sin(beam1.phi) - s2 * std::sin(beam2.phi));
    w.w_z_x = kdx * (beta_x(config, beam1) - beta_x(config, beam2));
    w.w_z_y = kdy * (beta_y(config, beam1) - beta_y(config, beam2));
    return w;
}

double cl_direct(Detunings w, int count)
{
    check_positive(count, "element count");
    const double first = -(count - 1) / 2.0;
    long double re = 0, im = 0;
    for (int i = 0; i < count; ++i) {
        const double n = first + i;
        const double arg = w.w_theta * n + w.w_z * std::abs(n);
        re += std::cos(arg);
        im += std::sin(arg);
    }
    return static_cast<double>(std::sqrt(re * re + im * im) / count);
}

double cl_same_angle(double w_z, int count)
{
    check(count > 0 && is_even(count), "cl_same_angle: count must be even and positive");
    if (w_z == 0.0)
        return 1.0;
    if (std::abs(std::cos(w_z) - 1.0) < kPoleTolerance)
        return cl_direct({0.0, w_z}, count);
    return std::abs(std::sin(0.25 * count * w_z) / (0.5 * count * std::sin(0.5 * w_z)));
}

double cl_same_range(double w_theta, int count)
{
    check_positive(count, "element count");
    if (w_theta == 0.0)
        return 1.0;
    if (std::abs(std::cos(w_theta) - 1.0) < kPoleTolerance)
        return cl_direct({w_theta, 0.0}, count);
    return std::abs(std::sin(0.5 * count * w_theta) / (count * std::sin(0.5 * w_theta)));
}

double cl_general(Detunings w, int count)
{
    check(count > 0 && is_even(count), "cl_general: count must be even and positive");
    const long double wt = w.w_theta;
    const long double wz = w.w_z;
    const long double n = count;

    const long double cos_t = std::cos(wt);
    const long double cos_z = std::cos(wz);
    const long double c_a = (cos_t - cos_z) * (std::cos(n * wt) - 1);
    const long double c_b = 2 * (cos_z - 1) * (cos_t + 1) * (std::cos(n * wz / 2) * std::cos(n * wt / 2) - 1);
    const long double c_c = -2 * std::sin(wz) * std::sin(wt) * std::sin(n * wz / 2) * std::sin(n * wt / 2);

    const long double sum = c_a + c_b + c_c;
    const long double den = std::abs(cos_z - cos_t);
    return static_cast<double>(std::sqrt(sum > 0 ? sum : 0) / (n * den));
}

double cl_closed(Detunings w, int count)
{
    check(count > 0 && is_even(count), "cl_closed: count must be even (use cl_direct for odd counts)");
    if (w.w_theta == 0.0 && w.w_z == 0.0)
        return 1.0;
    if (std::abs(std::cos(w.w_z) - std::cos(w.w_theta)) < kPoleTolerance)
        return cl_direct(w, count);
    if (w.w_theta == 0.0)
        return cl_same_angle(w.w_z, count);
    if (w.w_z == 0.0)
        return cl_same_range(w.w_theta, count);
    return cl_general(w, count);
}

double cp(const PlanarDetunings& w, int n_x, int n_y)
{
    auto axis = [](Detunings d, int n) { return is_even(n) ? cl_closed(d, n) : cl_direct(d, n); };
    return axis(w.x(), n_x) * axis(w.y(), n_y);
}

double cp_direct(const PlanarDetunings& w, int n_x, int n_y)
{
    check_positive(n_x, "n_x");
    check_positive(n_y, "n_y");
    const IndexGrid gx = element_index_grid(n_x);
    const IndexGrid gy = element_index_grid(n_y);
    lcplx sum = 0;
    for (double ny : gy) {
        const double row = w.w_theta_y * ny + w.w_z_y * std::abs(ny);
        for (double nx : gx) {
            const double arg = w.w_theta_x * nx + w.w_z_x * std::abs(nx) + row;
            sum += lcplx(std::cos(arg), std::sin(arg));
        }
    }
    return static_cast<double>(std::abs(sum) / (static_cast<long double>(n_x) * n_y));
}

std::vector<double> zero_set_wz(int count, int p_first, int p_last)
{
    check(count > 0 && is_even(count), "zero_set_wz: count must be even and positive");
    check(p_first <= p_last, "zero_set_wz: empty p range");
    const int half = count / 2;
    std::vector<double> values;
    for (int p = p_first; p <= p_last; ++p) {
        if (p % half == 0)
            continue;
        values.push_back(4.0 * kPi * p / count);
    }
    return values;
}

double zmax_partner(const ArrayConfig& config, double z_ref, int p)
{
    config.validate();
    check(z_ref > 0.0, "z_ref must be positive or infinite");
    if (p == 0)
        return z_ref;

    const double n = config.n_x;
    const double d = config.d_x;
    const double kd = wavenumber(config) * d;

    if (std::isinf(z_ref)) {
        // beta_ref = 0, so beta_2 = -4 pi p / (N k d).
        const double beta = -4.0 * kPi * p / (n * kd);
        if (!(beta > 0.0))
            throw std::domain_error("no finite positive partner distance for this p");
        return n * d / (2.0 * beta);
    }

    const double den = n - (8.0 * kPi / kd) * (z_ref / (n * d)) * p;
    if (!(den > 0.0))
        throw std::domain_error("no finite positive partner distance for this p");
    return n * z_ref / den;
}

std::vector<double> symmetric_axis(double max, int half)
{
    check(half >= 0, "symmetric_axis: half must be >= 0");
    std::vector<double> axis;
    axis.reserve(static_cast<std::size_t>(2 * half + 1));
    for (int i = -half; i <= half; ++i)
        axis.push_back(half == 0 ? 0.0 : max * i / half);
    return axis;
}

CorrelationMap correlation_map(int count, double kd, std::span<const double> w_theta_over_kd,
                               std::span<const double> w_z_over_kd, int workers)
{
    check_positive(count, "element count");
    check_positive(kd, "k d");

    CorrelationMap map;
    map.w_theta_over_kd.assign(w_theta_over_kd.begin(), w_theta_over_kd.end());
    map.w_z_over_kd.assign(w_z_over_kd.begin(), w_z_over_kd.end());
    map.magnitude.resize(map.w_theta_over_kd.size() * map.w_z_over_kd.size());

    const std::size_t cols = map.w_theta_over_kd.size();
    parallel_for(map.w_z_over_kd.size(), workers, [&](std::size_t iz) {
        for (std::size_t it = 0; it < cols; ++it) {
            const Detunings w{kd * map.w_theta_over_kd[it], kd * map.w_z_over_kd[iz]};
            map.magnitude[iz * cols + it] = is_even(count) ? cl_closed(w, count) : cl_direct(w, count);
        }
    });
    return map;
}

} // namespace nfbeam
