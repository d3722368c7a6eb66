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

#include "nfbeam/array_config.hpp"
#include "nfbeam/error.hpp"

#include <doctest.h>

#include <cmath>
#include <numeric>

using namespace nfbeam;

namespace {

ArrayConfig mm_pitch(int n_x)
{
    ArrayConfig c;
    c.n_x = n_x;
    c.d_x = 1e-3;
    c.wavelength = 2e-3;
    return c;
}

} // namespace

TEST_CASE("element_index_grid: odd, even and large counts")
{
    CHECK(element_index_grid(3) == IndexGrid{-1.0, 0.0, 1.0});
    CHECK(element_index_grid(4) == IndexGrid{-1.5, -0.5, 0.5, 1.5});
    CHECK(element_index_grid(1) == IndexGrid{0.0});
    const IndexGrid g = element_index_grid(500);
    CHECK(g.size() == 500);
    CHECK(g.front() == -249.5);
    CHECK(g.back() == 249.5);
}

TEST_CASE("element_index_grid rejects an empty array")
{
    CHECK_THROWS_AS(element_index_grid(0), ValidationError);
    CHECK_THROWS_AS(element_index_grid(-3), ValidationError);
}

TEST_CASE("element_index_grid is symmetric with unit spacing and zero sum")
{
    for (int n = 1; n <= 2048; ++n) {
        const IndexGrid g = element_index_grid(n);
        REQUIRE(g.size() == static_cast<std::size_t>(n));
        CHECK(std::accumulate(g.begin(), g.end(), 0.0) == 0.0);
        for (std::size_t i = 0; i < g.size(); ++i) {
            CHECK(g[i] == -g[g.size() - 1 - i]);
            if (i > 0)
                CHECK(g[i] - g[i - 1] == 1.0);
        }
    }
}

TEST_CASE("fraunhofer_distance at the reference apertures")
{
    CHECK(fraunhofer_distance(mm_pitch(200)) == doctest::Approx(40.0).epsilon(1e-14));
    CHECK(fraunhofer_distance(mm_pitch(500)) == doctest::Approx(250.0).epsilon(1e-14));
    CHECK(fraunhofer_distance(mm_pitch(1000)) == doctest::Approx(1000.0).epsilon(1e-14));
}

TEST_CASE("fraunhofer_distance scales quadratically with the element count")
{
    ArrayConfig c;
    c.d_x = 0.5;
    c.wavelength = 1.0;
    for (int n = 1; n <= 4096; n *= 2) {
        c.n_x = n;
        const double z = fraunhofer_distance(c);
        c.n_x = 2 * n;
        CHECK(fraunhofer_distance(c) == 4.0 * z);
    }
}

TEST_CASE("wavenumber")
{
    ArrayConfig c;
    CHECK(wavenumber(c) == doctest::Approx(3141.592653589793).epsilon(1e-15));
    CHECK(wavenumber(c) * c.d_x == doctest::Approx(3.14159265358979323846).epsilon(1e-15));
    c.wavelength = 1.0;
    CHECK(wavenumber(c) == doctest::Approx(2 * 3.14159265358979323846).epsilon(1e-15));
}

TEST_CASE("defaults: 150 GHz carrier and half-wavelength pitch")
{
    const ArrayConfig c;
    CHECK(c.wavelength == 2e-3);
    CHECK(c.d_x == 1e-3);
    CHECK(c.d_y == 1e-3);
    CHECK(c.is_ula());
    CHECK(wavelength_from_ghz(150.0) == doctest::Approx(299792458.0 / 150e9).epsilon(1e-15));

    const ArrayConfig u = ArrayConfig::upa(500, 400, 4e-3);
    CHECK(u.d_x == 2e-3);
    CHECK(u.d_y == 2e-3);
    CHECK(u.element_count() == 200000);
    CHECK(u.aperture(Axis::y) == doctest::Approx(0.8));
    CHECK(u.count(Axis::x) == 500);
}

TEST_CASE("ArrayConfig validation names the offending field")
{
    ArrayConfig c;
    c.n_x = 0;
    CHECK_THROWS_WITH_AS(c.validate(), doctest::Contains("n_x"), ValidationError);
    c = ArrayConfig{};
    c.d_y = -1e-3;
    CHECK_THROWS_WITH_AS(c.validate(), doctest::Contains("d_y"), ValidationError);
    c = ArrayConfig{};
    c.wavelength = 0.0;
    CHECK_THROWS_WITH_AS(c.validate(), doctest::Contains("wavelength"), ValidationError);
    CHECK_THROWS_AS(ArrayConfig::ula(0), ValidationError);
    CHECK_THROWS_AS(wavelength_from_ghz(-1.0), ValidationError);
}
