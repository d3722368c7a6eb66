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

#ifndef NFBEAM_TOOLS_IO_HPP
#define NFBEAM_TOOLS_IO_HPP

#include <complex>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <variant>
#include <vector>

namespace nfbeam::io {

/// 17 significant digits, '.' decimal point, independent of the locale.
std::string format_real(double value);

using CsvCell = std::variant<double, long long, std::string>;

/// Header row on construction, then one line per row(). Throws
/// std::runtime_error when the file cannot be written.
class CsvWriter {
public:
    CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header);
    void row(const std::vector<CsvCell>& cells);
    void close();

private:
    std::filesystem::path path_;
    std::ofstream out_;
    std::size_t columns_;
};

/// Complex grid stored in the NFBM container.
///
/// Layout (little-endian): "NFBM", u16 version = 1, u32 dim0, u32 dim1,
/// f64 spacing0, f64 spacing1, f64 origin0, f64 origin1, then dim0 * dim1
/// (re, im) f64 pairs, row-major with dim0 varying fastest.
struct FieldGrid {
    std::uint32_t dim0 = 0; // x samples
    std::uint32_t dim1 = 0; // z slices or y samples
    double spacing0 = 0.0;
    double spacing1 = 0.0;
    double origin0 = 0.0;
    double origin1 = 0.0;
    std::vector<std::complex<double>> values;
};

inline constexpr std::uint16_t kNfbmVersion = 1;

void write_nfbm(const std::filesystem::path& path, const FieldGrid& grid);
FieldGrid read_nfbm(const std::filesystem::path& path);

/// 8-bit grayscale heatmap of a row-major (height, width) array, brightest at
/// the maximum. With log_scale the image shows log10 of the value clipped
/// to the top `log_range_decades` decades.
void write_png_heatmap(const std::filesystem::path& path, std::size_t width, std::size_t height,
                       const std::vector<double>& values, bool log_scale, double log_range_decades = 6.0);

} // namespace nfbeam::io

#endif
