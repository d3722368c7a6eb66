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

#include <png.h>

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <memory>
#include <stdexcept>

namespace nfbeam::io {

static_assert(std::endian::native == std::endian::little, "NFBM I/O assumes a little-endian host");

std::string format_real(double value)
{
    if (std::isnan(value))
        return "nan";
    if (std::isinf(value))
        return value > 0 ? "inf" : "-inf";
    char buf[64];
    const auto result = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::scientific, 16);
    return std::string(buf, result.ptr);
}

CsvWriter::CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header)
    : path_(path), out_(path, std::ios::binary), columns_(header.size())
{
    if (!out_)
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    for (std::size_t i = 0; i < header.size(); ++i)
        out_ << (i ? "," : "") << header[i];
    out_ << '\n';
}

void CsvWriter::row(const std::vector<CsvCell>& cells)
{
    if (cells.size() != columns_)
        throw std::logic_error("CSV row width does not match the header");
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i)
            out_ << ',';
        if (const double* d = std::get_if<double>(&cells[i]))
            out_ << format_real(*d);
        else if (const long long* n = std::get_if<long long>(&cells[i]))
            out_ << *n;
        else
            out_ << std::get<std::string>(cells[i]);
    }
    out_ << '\n';
}

void CsvWriter::close()
{
    out_.close();
    if (!out_)
        throw std::runtime_error("failed writing " + path_.string());
}

namespace {

template <typename T>
void put(std::ofstream& out, T value)
{
    out.write(reinterpret_cast<const char*>(&value), sizeof value);
}

template <typename T>
T get(std::ifstream& in, const std::filesystem::path& path)
{
    T value{};
    if (!in.read(reinterpret_cast<char*>(&value), sizeof value))
        throw std::runtime_error(path.string() + ": truncated NFBM file");
    return value;
}

} // namespace

void write_nfbm(const std::filesystem::path& path, const FieldGrid& grid)
{
    if (grid.values.size() != static_cast<std::size_t>(grid.dim0) * grid.dim1)
        throw std::logic_error("NFBM grid dimensions do not match the value count");
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    out.write("NFBM", 4);
    put(out, kNfbmVersion);
    put(out, grid.dim0);
    put(out, grid.dim1);
    put(out, grid.spacing0);
    put(out, grid.spacing1);
    put(out, grid.origin0);
    put(out, grid.origin1);
    out.write(reinterpret_cast<const char*>(grid.values.data()),
              static_cast<std::streamsize>(grid.values.size() * sizeof(std::complex<double>)));
    out.close();
    if (!out)
        throw std::runtime_error("failed writing " + path.string());
}

FieldGrid read_nfbm(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open " + path.string());
    char magic[4];
    if (!in.read(magic, 4) || std::memcmp(magic, "NFBM", 4) != 0)
        throw std::runtime_error(path.string() + ": not an NFBM file");
    if (get<std::uint16_t>(in, path) != kNfbmVersion)
        throw std::runtime_error(path.string() + ": unsupported NFBM version");

    FieldGrid grid;
    grid.dim0 = get<std::uint32_t>(in, path);
    grid.dim1 = get<std::uint32_t>(in, path);
    grid.spacing0 = get<double>(in, path);
    grid.spacing1 = get<double>(in, path);
    grid.origin0 = get<double>(in, path);
    grid.origin1 = get<double>(in, path);
    grid.values.resize(static_cast<std::size_t>(grid.dim0) * grid.dim1);
    if (!in.read(reinterpret_cast<char*>(grid.values.data()),
                 static_cast<std::streamsize>(grid.values.size() * sizeof(std::complex<double>))))
        throw std::runtime_error(path.string() + ": truncated NFBM file");
    return grid;
}

void write_png_heatmap(const std::filesystem::path& path, std::size_t width, std::size_t height,
                       const std::vector<double>& values, bool log_scale, double log_range_decades)
{
    if (values.size() != width * height || values.empty())
        throw std::logic_error("heatmap dimensions do not match the value count");

    const double top = *std::max_element(values.begin(), values.end());
    std::vector<unsigned char> pixels(values.size(), 0);
    for (std::size_t i = 0; i < values.size(); ++i) {
        double level = 0.0;
        if (top > 0.0) {
            if (log_scale) {
                const double v = std::max(values[i], top * std::pow(10.0, -log_range_decades));
                level = 1.0 + std::log10(v / top) / log_range_decades;
            } else {
                level = std::max(values[i], 0.0) / top;
            }
        }
        pixels[i] = static_cast<unsigned char>(std::lround(std::clamp(level, 0.0, 1.0) * 255.0));
    }

    std::unique_ptr<FILE, int (*)(FILE*)> file(std::fopen(path.string().c_str(), "wb"), &std::fclose);
    if (!file)
        throw std::runtime_error("cannot open " + path.string() + " for writing");

    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info) {
        png_destroy_write_struct(&png, &info);
        throw std::runtime_error("libpng initialisation failed");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw std::runtime_error("failed writing " + path.string());
    }
    png_init_io(png, file.get());
    png_set_IHDR(png, info, static_cast<png_uint_32>(width), static_cast<png_uint_32>(height), 8,
                 PNG_COLOR_TYPE_GRAY, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    // First array row is drawn at the bottom so the second axis points up.
    for (std::size_t r = 0; r < height; ++r)
        png_write_row(png, pixels.data() + (height - 1 - r) * width);
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);

    if (std::fflush(file.get()) != 0)
        throw std::runtime_error("failed writing " + path.string());
}

} // namespace nfbeam::io
