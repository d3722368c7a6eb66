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

#ifndef NFBEAM_SRC_FFT_HPP
#define NFBEAM_SRC_FFT_HPP

#include <complex>
#include <cstddef>
#include <vector>

namespace nfbeam::detail {

enum class FftDirection { forward, inverse };

// Unnormalized in-place DFT over a row-major (rows x cols) grid; rows == 1
// gives a 1D transform. forward uses exp(-j...), inverse exp(+j...) without
// the 1/size factor.
void fft_inplace(std::vector<std::complex<double>>& data, std::size_t rows, std::size_t cols, FftDirection direction);

} // namespace nfbeam::detail

#endif
