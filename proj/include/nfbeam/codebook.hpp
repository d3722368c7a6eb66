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

#ifndef NFBEAM_CODEBOOK_HPP
#define NFBEAM_CODEBOOK_HPP

#include "nfbeam/array_config.hpp"
#include "nfbeam/beamgen.hpp"
#include "nfbeam/propagation.hpp"

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace nfbeam {

enum class Parity { even, odd };

inline Parity parity_of(int q) { return q % 2 == 0 ? Parity::even : Parity::odd; }

/// One NF-SDMA mode on the (direction q, range p) grid.
///
/// p >= 1 indexes the range set of q's parity. p == 0 marks a mode off the
/// range grid: the infinite-range reference beam on the even branch, or a
/// single-antenna mode whose range is fixed externally.
struct ModeEntry {
    int q = 0;
    int p = 0;
    double theta = 0.0; // rad
    double z_max = kInfiniteRange;
    double beta = 0.0;
    BeamParams beam;
};

struct Codebook {
    std::vector<ModeEntry> entries;
    std::vector<std::pair<std::size_t, std::size_t>> conflicts; // i < j
    int q_max = 0;
    int p_max_even = 0;
    int p_max_odd = 0;
    /// Number of grid modes: sum over directions of the p_max of that
    /// direction's parity. Equals (2 q_max + 1) p_max when both parities agree.
    int m_max = 0;

    // Pairwise verification with cl_direct.
    std::size_t verified_pairs = 0;
    double max_orthogonal_correlation = 0.0; // over non-conflicting pairs
    double min_conflict_correlation = 1.0;   // over conflicting pairs

    int direction_count() const { return 2 * q_max + 1; }
};

/// floor(sin(theta_max) N k d / (2 pi)).
int q_max(const ArrayConfig& config, double theta_max);

/// (q, theta) for q in [-q_max, q_max], theta = arcsin(2 pi q / (N k d)).
std::vector<std::pair<int, double>> direction_set(const ArrayConfig& config, int q_max);

/// Largest p whose range-set distance is still >= z_r on the given branch.
int p_max(const ArrayConfig& config, double z_r, Parity parity);

/// Range-set distance of index p >= 1: (k d / pi) d N^2 / (8 p) for even q,
/// (k d / pi) d N^2 / (4 (2p - 1)) for odd q.
double range_zmax(const ArrayConfig& config, int p, Parity parity);

/// (p, z_max) for p = 1..p_max.
std::vector<std::pair<int, double>> range_set(const ArrayConfig& config, int p_max, Parity parity);

/// Grid mode (q, p). p == 0 is only valid for even q (infinite range).
ModeEntry make_mode(const ArrayConfig& config, int q, int p);

/// True when the two grid modes are not orthogonal: |dq| = 2 |dp| for even
/// dq, |q_e - q_o| = |2 (p_e - p_o) + 1| for mixed parity, where e is the
/// even-q mode. Identical modes are not a conflict.
bool conflict(const ModeEntry& a, const ModeEntry& b);

/// Full direction x range grid with its conflict graph, verified pairwise.
/// Requires a ULA with an even element count.
Codebook build_codebook(const ArrayConfig& config, double theta_max, double z_r, int workers = 1);

/// Greedy independent set: walks `order` (indices into codebook.entries, all
/// entries in index order when empty) and keeps each mode that does not
/// conflict with one already kept.
std::vector<ModeEntry> select_conflict_free(const Codebook& codebook, std::span<const std::size_t> order = {});

/// Modes sharing z_max = (N d)^2 / lambda, probed at z_F / 4.
struct SingleAntennaCodebook {
    std::vector<ModeEntry> entries;
    double z_max = 0.0;
    double probe_z = 0.0;
    /// First standing-wave zero offset pi / (2 k beta) = N d / 2.
    double null_offset = 0.0;
};

SingleAntennaCodebook single_antenna_codebook(const ArrayConfig& config, std::span<const int> q_list);

/// Intensity ratios at the users' positions on the probe plane.
///
/// ratio[i][u] = |E_i(x_u)|^2 / |E_u(x_u)|^2 with x_u the transverse
/// intensity peak of mode u. The steering matrix repeats the computation for
/// beta = 0 beams at the same angles, with their own peaks as user positions.
struct InterferenceMatrix {
    std::vector<int> q;
    std::vector<std::vector<double>> near_field;
    std::vector<std::vector<double>> steering;
    std::vector<double> user_x_near_field;
    std::vector<double> user_x_steering;
    /// Deepest near-field intensity minimum on each side of the user, as an
    /// offset from the user position (negative, positive).
    std::vector<std::pair<double, double>> null_offsets;
    double grid_spacing = 0.0;
    double probe_z = 0.0;
};

InterferenceMatrix interference_matrix(const ArrayConfig& config, const SingleAntennaCodebook& codebook,
                                       double probe_z, double pad_factor = kDefaultPadFactor, int workers = 1);

} // namespace nfbeam

#endif
