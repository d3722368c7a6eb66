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

#include "fft.hpp"

#include <fftw3.h>

#include <mutex>
#include <stdexcept>

namespace nfbeam::detail {

namespace {

// The FFTW planner is not thread-safe; execution is.
std::mutex& planner_mutex()
{
    static std::mutex m;
    return m;
}

class Plan {
public:
    Plan(std::vector<std::complex<double>>& data, std::size_t rows, std::size_t cols, FftDirection direction)
    {
        auto* buf = reinterpret_cast<fftw_complex*>(data.data());
        const int sign = direction == FftDirection::forward ? FFTW_FORWARD : FFTW_BACKWARD;
        std::lock_guard lock(planner_mutex());
        if (rows == 1)
            plan_ = fftw_plan_dft_1d(static_cast<int>(cols), buf, buf, sign, FFTW_ESTIMATE);
        else
            plan_ = fftw_plan_dft_2d(static_cast<int>(rows), static_cast<int>(cols), buf, buf, sign, FFTW_ESTIMATE);
        if (!plan_)
            throw std::runtime_error("FFTW failed to create a plan");
    }

    ~Plan()
    {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(plan_);
    }

    Plan(const Plan&) = delete;
    Plan& operator=(const Plan&) = delete;

    void execute() { fftw_execute(plan_); }

private:
    fftw_plan plan_ = nullptr;
};

} // namespace

void fft_inplace(std::vector<std::complex<double>>& data, std::size_t rows, std::size_t cols, FftDirection direction)
{
    if (rows * cols != data.size() || data.empty())
        throw std::invalid_argument("fft_inplace: grid shape does not match buffer size");
    Plan plan(data, rows, cols, direction);
    plan.execute();
}

} // namespace nfbeam::detail
