// Copyright 2026 The kharper Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// FFTW plan cache shared by the QFT fast path, the Husimi transform and the
// time-series spectrum. Planning is serialized; execution is thread-safe.

#include <cstddef>
#include <span>

#include "kharper/statevector.hpp"

namespace kharper::detail {

/// Unnormalized in-place DFT over one axis of a 3-level strided layout:
/// index = low + stride * (k + length * high), with `low_count` entries below
/// the axis and `high_count` above it. sign=+1 uses exp(+2 pi i jk/N).
void strided_dft(cplx* data, std::size_t length, std::size_t low_count, std::size_t high_count,
                 int sign);

/// Unnormalized contiguous DFT.
inline void dft(std::span<cplx> data, int sign) { strided_dft(data.data(), data.size(), 1, 1, sign); }

}  // namespace kharper::detail
