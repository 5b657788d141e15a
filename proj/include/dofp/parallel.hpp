// Copyright (c) 2026 the dofp-demosaic authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <thread>
#include <vector>

namespace dofp {

/// Runs body(row_begin, row_end) over disjoint row bands. threads <= 1 runs
/// inline; otherwise one band per thread. Bands write disjoint output rows,
/// so results are identical to the single-threaded run.
template <class Body>
void parallel_rows(int height, int threads, Body&& body) {
    if (threads <= 1 || height <= 1) {
        body(0, height);
        return;
    }
    const int bands = std::min(threads, height);
    std::vector<std::jthread> pool;
    pool.reserve(bands - 1);
    const int chunk = (height + bands - 1) / bands;
    for (int b = 1; b < bands; ++b) {
        const int r0 = std::min(b * chunk, height);
        const int r1 = std::min(r0 + chunk, height);
        if (r0 < r1) pool.emplace_back([&body, r0, r1] { body(r0, r1); });
    }
    body(0, std::min(chunk, height));
}

}  // namespace dofp
