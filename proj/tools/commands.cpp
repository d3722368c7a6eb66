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

#include "io.hpp"
#include "run_spec.hpp"

#include "nfbeam/codebook.hpp"
#include "nfbeam/correlation.hpp"
#include "nfbeam/error.hpp"
#include "nfbeam/parallel.hpp"
#include "nfbeam/propagation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>

namespace nfbeam::cli {

namespace {

namespace fs = std::filesystem;
using io::CsvWriter;
using io::format_real;

constexpr double kDeg = kPi / 180.0;

long long as_int(std::size_t v) { return static_cast<long long>(v); }
long long as_int(int v) { return v; }

double analytic_correlation(const ArrayConfig& config, const BeamParams& a, const BeamParams& b)
{
    const Detunings w = detunings(config, a, b);
    return config.n_x % 2 == 0 ? cl_closed(w, config.n_x) : cl_direct(w, config.n_x);
}

void warn_on_slope(const ArrayConfig& config, const BeamParams& beam)
{
    if (!slope_approximation_holds(config, beam))
        warn("z_max is not larger than the aperture N d; the linear convergence slope is inaccurate there");
}

void warn_on_edge(double fraction)
{
    if (fraction > kLeakThreshold)
        warn("up to " + format_real(fraction * 100.0) +
             "% of the field energy reaches the outer 5% of the grid; increase --pad-factor");
}

std::vector<double> linspace(double start, double stop, int count)
{
    std::vector<double> v(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i)
        v[static_cast<std::size_t>(i)] = count == 1 ? start : start + (stop - start) * i / (count - 1);
    return v;
}

// Contiguous index range of samples with |coordinate| <= half_width.
std::pair<std::size_t, std::size_t> crop_range(std::size_t n, double origin, double spacing, double half_width)
{
    std::size_t lo = n, hi = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (std::abs(origin + static_cast<double>(i) * spacing) <= half_width * (1.0 + 1e-12)) {
            lo = std::min(lo, i);
            hi = std::max(hi, i + 1);
        }
    }
    check(lo < hi, "--crop-x-m leaves no samples");
    return {lo, hi};
}

// ---------------------------------------------------------------- beam

int run_beam(const RunSpec& spec, std::ostream& out)
{
    const ArrayConfig& config = spec.config;
    warn_on_slope(config, spec.beam);
    const SteeringVector sv = steering_vector(config, spec.beam);
    const std::vector<double> phase =
        config.is_ula() ? phase_profile_ula(config, spec.beam) : phase_profile_upa(config, spec.beam).values;
    const IndexGrid gx = element_index_grid(config.n_x);
    const IndexGrid gy = element_index_grid(config.n_y);

    if (config.is_ula()) {
        CsvWriter csv(spec.out_dir / "steering.csv", {"n_index", "phase_rad", "re", "im"});
        for (std::size_t i = 0; i < gx.size(); ++i)
            csv.row({gx[i], phase[i], sv.entries[i].real(), sv.entries[i].imag()});
        csv.close();
    } else {
        CsvWriter csv(spec.out_dir / "steering.csv", {"n_x_index", "n_y_index", "phase_rad", "re", "im"});
        for (std::size_t iy = 0; iy < gy.size(); ++iy) {
            for (std::size_t ix = 0; ix < gx.size(); ++ix) {
                const std::size_t i = iy * gx.size() + ix;
                csv.row({gx[ix], gy[iy], phase[i], sv.entries[i].real(), sv.entries[i].imag()});
            }
        }
        csv.close();
    }

    out << "elements: " << sv.size() << '\n'
        << "beta_x: " << format_real(beta_x(config, spec.beam)) << '\n'
        << "beta_y: " << format_real(config.is_ula() ? 0.0 : beta_y(config, spec.beam)) << '\n'
        << "fraunhofer_distance_m: " << format_real(fraunhofer_distance(config)) << '\n'
        << "norm: " << format_real(sv.norm()) << '\n';
    return kExitOk;
}

// ------------------------------------------------------------ corr-map

int run_corr_map(const RunSpec& spec, std::ostream& out)
{
    const ArrayConfig& config = spec.config;
    const double kd = wavenumber(config) * config.d_x;
    const std::vector<double> wt = symmetric_axis(spec.wt_max, spec.wt_half);
    const std::vector<double> wz = symmetric_axis(spec.wz_max, spec.wz_half);
    const CorrelationMap map = correlation_map(config.n_x, kd, wt, wz, spec.workers);

    std::vector<std::string> header{"w_theta_over_kd", "w_z_over_kd", "c_magnitude"};
    if (spec.log_scale)
        header.push_back("log10_c");
    CsvWriter csv(spec.out_dir / "corr_map.csv", header);
    for (std::size_t iz = 0; iz < wz.size(); ++iz) {
        for (std::size_t it = 0; it < wt.size(); ++it) {
            const double c = map.at(iz, it);
            if (spec.log_scale)
                csv.row({wt[it], wz[iz], c, std::log10(c)});
            else
                csv.row({wt[it], wz[iz], c});
        }
    }
    csv.close();
    io::write_png_heatmap(spec.out_dir / "corr_map.png", wt.size(), wz.size(), map.magnitude, spec.log_scale);

    out << "grid: " << wt.size() << " x " << wz.size() << '\n';
    return kExitOk;
}

// ----------------------------------------------------------- propagate

int run_propagate(const RunSpec& spec, std::ostream& out)
{
    const ArrayConfig& config = spec.config;
    warn_on_slope(config, spec.beam);
    const std::vector<double> z = linspace(spec.z_start, spec.z_stop, spec.z_count);
    const SampledField aperture =
        aperture_field(config, spec.beam, spec.pad_factor, spec.excitation, spec.memory_budget);
    const auto [x_lo, x_hi] = crop_range(aperture.nx, aperture.origin_x, aperture.spacing_x, spec.crop_x);
    const std::size_t width = x_hi - x_lo;
    const double dz = z.size() > 1 ? z[1] - z[0] : 0.0;

    if (config.is_ula()) {
        const double bytes = static_cast<double>(aperture.nx) * static_cast<double>(z.size()) * sizeof(cplx);
        if (bytes > static_cast<double>(spec.memory_budget))
            throw ResourceError("propagated stack " + std::to_string(aperture.nx) + " x " + std::to_string(z.size()) +
                                " exceeds the memory budget");
        const std::vector<SampledField> fields = propagate_to(aperture, z, spec.workers);

        io::FieldGrid grid;
        grid.dim0 = static_cast<std::uint32_t>(width);
        grid.dim1 = static_cast<std::uint32_t>(z.size());
        grid.spacing0 = aperture.spacing_x;
        grid.spacing1 = dz;
        grid.origin0 = aperture.x(x_lo);
        grid.origin1 = z.front();
        std::vector<double> intensity;
        double edge = 0.0;
        CsvWriter csv(spec.out_dir / "intensity.csv", {"x_m", "z_m", "intensity"});
        for (std::size_t iz = 0; iz < z.size(); ++iz) {
            edge = std::max(edge, edge_energy_fraction(fields[iz]));
            for (std::size_t ix = x_lo; ix < x_hi; ++ix) {
                const cplx e = fields[iz].at(ix);
                grid.values.push_back(e);
                intensity.push_back(std::norm(e));
                csv.row({aperture.x(ix), z[iz], std::norm(e)});
            }
        }
        csv.close();
        io::write_nfbm(spec.out_dir / "field.nfbm", grid);
        io::write_png_heatmap(spec.out_dir / "intensity.png", width, z.size(), intensity, spec.log_scale);
        warn_on_edge(edge);
        out << "grid: " << aperture.nx << " samples, exported " << width << " x " << z.size() << '\n';
        return kExitOk;
    }

    // Planar arrays: one xy slice per distance plus the y = 0 row over z.
    const auto [y_lo, y_hi] = crop_range(aperture.ny, aperture.origin_y, aperture.spacing_y, spec.crop_x);
    const std::size_t height = y_hi - y_lo;
    const std::size_t row = (aperture.ny - 1) / 2;
    std::vector<double> xz;
    double edge = 0.0;
    CsvWriter csv(spec.out_dir / "intensity.csv", {"x_m", "z_m", "intensity"});
    for (std::size_t iz = 0; iz < z.size(); ++iz) {
        const SampledField f = propagate(aperture, z[iz]);
        edge = std::max(edge, edge_energy_fraction(f));

        io::FieldGrid grid;
        grid.dim0 = static_cast<std::uint32_t>(width);
        grid.dim1 = static_cast<std::uint32_t>(height);
        grid.spacing0 = f.spacing_x;
        grid.spacing1 = f.spacing_y;
        grid.origin0 = f.x(x_lo);
        grid.origin1 = f.y(y_lo);
        std::vector<double> xy;
        for (std::size_t iy = y_lo; iy < y_hi; ++iy) {
            for (std::size_t ix = x_lo; ix < x_hi; ++ix) {
                grid.values.push_back(f.at(ix, iy));
                xy.push_back(std::norm(f.at(ix, iy)));
            }
        }
        char name[32];
        std::snprintf(name, sizeof name, "_z%03zu", iz);
        io::write_nfbm(spec.out_dir / ("field" + std::string(name) + ".nfbm"), grid);
        io::write_png_heatmap(spec.out_dir / ("intensity" + std::string(name) + ".png"), width, height, xy,
                              spec.log_scale);
        for (std::size_t ix = x_lo; ix < x_hi; ++ix) {
            xz.push_back(std::norm(f.at(ix, row)));
            csv.row({f.x(ix), z[iz], xz.back()});
        }
    }
    csv.close();
    io::write_png_heatmap(spec.out_dir / "intensity.png", width, z.size(), xz, spec.log_scale);
    warn_on_edge(edge);
    out << "grid: " << aperture.nx << " x " << aperture.ny << " samples, " << z.size() << " slices\n";
    return kExitOk;
}

// ------------------------------------------------------ rx-corr / sweep

void preflight_grid(const RunSpec& spec, const BeamParams& beam)
{
    (void)aperture_field(spec.config, beam, spec.pad_factor, Excitation::phase, spec.memory_budget);
}

int run_rx_corr(const RunSpec& spec, std::ostream& out)
{
    const ArrayConfig& config = spec.config;
    warn_on_slope(config, spec.beam);
    warn_on_slope(config, spec.beam2);
    preflight_grid(spec, spec.beam);

    const BeamPair pair{spec.beam, spec.beam2};
    const std::vector<double> at{spec.rx.center_x};
    const SweepRow r =
        rx_sweep(config, std::span(&pair, 1), SweepAxis::x_offset, at, spec.rx, spec.pad_factor, spec.workers).front();
    const double analytic = analytic_correlation(config, spec.beam, spec.beam2);
    warn_on_edge(r.edge_fraction);

    CsvWriter csv(spec.out_dir / "rx_corr.csv", {"theta1_deg", "zmax1_m", "theta2_deg", "zmax2_m", "rx_n", "rx_x_m",
                                                  "rx_z_m", "c_analytic", "c_tx", "c_rx", "edge_fraction"});
    csv.row({spec.beam.theta / kDeg, spec.beam.z_max_x, spec.beam2.theta / kDeg, spec.beam2.z_max_x,
             as_int(spec.rx.count_x), spec.rx.center_x, spec.rx.z, analytic, r.c_tx, r.c_rx, r.edge_fraction});
    csv.close();

    out << "zmax2_m: " << format_real(spec.beam2.z_max_x) << '\n'
        << "c_analytic: " << format_real(analytic) << '\n'
        << "c_tx: " << format_real(r.c_tx) << '\n'
        << "c_rx: " << format_real(r.c_rx) << '\n';
    return kExitOk;
}

int run_rx_sweep(const RunSpec& spec, std::ostream& out)
{
    const ArrayConfig& config = spec.config;
    warn_on_slope(config, spec.beam);
    preflight_grid(spec, spec.beam);

    std::vector<BeamPair> pairs;
    std::vector<double> values;
    SweepAxis axis = SweepAxis::x_offset;
    const char* name = "zmax2";
    if (spec.sweep == Sweep::zmax2) {
        for (double z2 : spec.sweep_values) {
            BeamParams b2 = spec.beam2;
            b2.z_max_x = b2.z_max_y = z2;
            warn_on_slope(config, b2);
            pairs.emplace_back(spec.beam, b2);
        }
        values.push_back(spec.rx.center_x);
    } else {
        warn_on_slope(config, spec.beam2);
        pairs.emplace_back(spec.beam, spec.beam2);
        values = spec.sweep_values;
        switch (spec.sweep) {
        case Sweep::rx_size: axis = SweepAxis::rx_size, name = "rx-size"; break;
        case Sweep::z_offset: axis = SweepAxis::z_offset, name = "z-offset"; break;
        default: axis = SweepAxis::x_offset, name = "x-offset"; break;
        }
    }

    const std::vector<SweepRow> rows =
        rx_sweep(config, pairs, axis, values, spec.rx, spec.pad_factor, spec.workers);

    CsvWriter csv(spec.out_dir / "rx_sweep.csv",
                  {"sweep", "sweep_value", "zmax2_m", "c_analytic", "c_tx", "c_rx", "edge_fraction"});
    double worst_gap = 0.0, edge = 0.0;
    for (const SweepRow& r : rows) {
        const BeamPair& p = pairs[r.pair_index];
        const double analytic = analytic_correlation(config, p.first, p.second);
        const double value = spec.sweep == Sweep::zmax2 ? p.second.z_max_x : r.sweep_value;
        csv.row({std::string(name), value, p.second.z_max_x, analytic, r.c_tx, r.c_rx, r.edge_fraction});
        worst_gap = std::max(worst_gap, std::abs(r.c_rx - analytic));
        edge = std::max(edge, r.edge_fraction);
    }
    csv.close();
    warn_on_edge(edge);

    out << "points: " << rows.size() << '\n' << "max_abs_c_rx_minus_analytic: " << format_real(worst_gap) << '\n';
    return kExitOk;
}

// ------------------------------------------------------------ codebook

void write_modes(const fs::path& path, const std::vector<ModeEntry>& modes, const std::vector<std::size_t>& ids)
{
    CsvWriter csv(path, {"mode_id", "q", "p", "theta_deg", "z_max_m", "beta"});
    for (std::size_t i = 0; i < modes.size(); ++i)
        csv.row({as_int(ids[i]), as_int(modes[i].q), as_int(modes[i].p), modes[i].theta / kDeg, modes[i].z_max,
                 modes[i].beta});
    csv.close();
}

int run_codebook(const RunSpec& spec, std::ostream& out)
{
    const Codebook book = build_codebook(spec.config, spec.theta_max, spec.z_r, spec.workers);

    std::vector<std::size_t> ids(book.entries.size());
    std::map<std::pair<int, int>, std::size_t> id_of;
    for (std::size_t i = 0; i < ids.size(); ++i) {
        ids[i] = i;
        id_of[{book.entries[i].q, book.entries[i].p}] = i;
    }
    write_modes(spec.out_dir / "codebook.csv", book.entries, ids);

    CsvWriter conflicts(spec.out_dir / "conflicts.csv", {"mode_id_a", "mode_id_b"});
    for (const auto& [a, b] : book.conflicts)
        conflicts.row({as_int(a), as_int(b)});
    conflicts.close();

    CsvWriter summary(spec.out_dir / "codebook_summary.csv",
                      {"q_max", "direction_count", "p_max_even", "p_max_odd", "m_max", "conflict_count",
                       "verified_pairs", "max_orthogonal_correlation", "min_conflict_correlation"});
    summary.row({as_int(book.q_max), as_int(book.direction_count()), as_int(book.p_max_even), as_int(book.p_max_odd),
                 as_int(book.m_max), as_int(book.conflicts.size()), as_int(book.verified_pairs),
                 book.max_orthogonal_correlation, book.min_conflict_correlation});
    summary.close();

    out << "q_max: " << book.q_max << '\n'
        << "direction_count: " << book.direction_count() << '\n'
        << "p_max_even: " << book.p_max_even << '\n'
        << "p_max_odd: " << book.p_max_odd << '\n'
        << "m_max: " << book.m_max << '\n'
        << "conflicts: " << book.conflicts.size() << '\n'
        << "max_orthogonal_correlation: " << format_real(book.max_orthogonal_correlation) << '\n';

    if (spec.select) {
        std::vector<std::size_t> order;
        for (const auto& qp : spec.order) {
            const auto it = id_of.find(qp);
            check(it != id_of.end(), "--order: mode " + std::to_string(qp.first) + ":" + std::to_string(qp.second) +
                                         " is not on the grid");
            order.push_back(it->second);
        }
        const std::vector<ModeEntry> kept = select_conflict_free(book, order);
        std::vector<std::size_t> kept_ids;
        for (const ModeEntry& m : kept)
            kept_ids.push_back(id_of.at({m.q, m.p}));
        write_modes(spec.out_dir / "selected.csv", kept, kept_ids);
        out << "selected: " << kept.size() << '\n';
    }
    return kExitOk;
}

// ----------------------------------------------------------- sdma-demo

int run_sdma_demo(const RunSpec& spec, std::ostream& out)
{
    const ArrayConfig& config = spec.config;
    const SingleAntennaCodebook book = single_antenna_codebook(config, spec.q_list);
    const double probe = spec.probe_z.value_or(book.probe_z);
    warn_on_slope(config, book.entries.front().beam);
    preflight_grid(spec, book.entries.front().beam);

    const InterferenceMatrix im = interference_matrix(config, book, probe, spec.pad_factor, spec.workers);
    const std::size_t m = im.q.size();

    CsvWriter csv(spec.out_dir / "interference.csv", {"family", "row_mode_q", "col_user_q", "ratio", "ratio_db"});
    auto emit = [&](const std::string& family, const std::vector<std::vector<double>>& matrix) {
        double worst = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t u = 0; u < m; ++u) {
                csv.row({family, as_int(im.q[i]), as_int(im.q[u]), matrix[i][u], 10.0 * std::log10(matrix[i][u])});
                if (i != u)
                    worst = std::max(worst, matrix[i][u]);
            }
        }
        return worst;
    };
    const double worst_nf = emit("nf-sdma", im.near_field);
    const double worst_st = emit("sdma", im.steering);
    csv.close();

    CsvWriter users(spec.out_dir / "users.csv",
                    {"q", "theta_deg", "user_x_nf_m", "user_x_sdma_m", "null_left_offset_m", "null_right_offset_m"});
    for (std::size_t u = 0; u < m; ++u)
        users.row({as_int(im.q[u]), book.entries[u].theta / kDeg, im.user_x_near_field[u], im.user_x_steering[u],
                   im.null_offsets[u].first, im.null_offsets[u].second});
    users.close();

    out << "z_max_m: " << format_real(book.z_max) << '\n'
        << "probe_z_m: " << format_real(probe) << '\n'
        << "null_offset_m: " << format_real(book.null_offset) << '\n'
        << "max_offdiag_nf_sdma: " << format_real(worst_nf) << '\n'
        << "max_offdiag_sdma: " << format_real(worst_st) << '\n';
    return kExitOk;
}

// Routes library warnings to the command's error stream for its lifetime.
class WarningScope {
public:
    explicit WarningScope(std::ostream& err)
    {
        set_warning_handler([&err](std::string_view message) { err << "warning: " << message << '\n'; });
    }
    ~WarningScope()
    {
        set_warning_handler([](std::string_view message) {
            std::fprintf(stderr, "warning: %.*s\n", static_cast<int>(message.size()), message.data());
        });
    }
    WarningScope(const WarningScope&) = delete;
    WarningScope& operator=(const WarningScope&) = delete;
};

} // namespace

int run(const RunSpec& spec, std::ostream& out, std::ostream& err)
{
    WarningScope scope(err);
    try {
        std::error_code ec;
        fs::create_directories(spec.out_dir, ec);
        if (ec)
            throw std::runtime_error("cannot create --out-dir '" + spec.out_dir.string() + "': " + ec.message());

        if (spec.command == "beam")
            return run_beam(spec, out);
        if (spec.command == "corr-map")
            return run_corr_map(spec, out);
        if (spec.command == "propagate")
            return run_propagate(spec, out);
        if (spec.command == "rx-corr")
            return run_rx_corr(spec, out);
        if (spec.command == "rx-sweep")
            return run_rx_sweep(spec, out);
        if (spec.command == "codebook")
            return run_codebook(spec, out);
        if (spec.command == "sdma-demo")
            return run_sdma_demo(spec, out);
        err << "error: unknown command '" << spec.command << "'\n";
        return kExitUsage;
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
}

} // namespace nfbeam::cli
