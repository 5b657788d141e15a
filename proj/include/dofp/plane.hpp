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

#include <cassert>
#include <cstddef>
#include <span>
#include <vector>

namespace dofp {

/// Row-major plane of double samples. Every pipeline stage works in double
/// precision; quantization happens only on file export.
class Plane {
public:
    Plane() = default;
    Plane(int width, int height, double fill = 0.0)
        : width_(width), height_(height),
          v_(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill) {
        assert(width >= 0 && height >= 0);
    }

    int width() const { return width_; }
    int height() const { return height_; }
    std::size_t size() const { return v_.size(); }
    bool empty() const { return v_.empty(); }

    // (i, j) = (row, column)
    double& at(int i, int j) {
        assert(i >= 0 && i < height_ && j >= 0 && j < width_);
        return v_[static_cast<std::size_t>(i) * width_ + j];
    }
    double at(int i, int j) const {
        assert(i >= 0 && i < height_ && j >= 0 && j < width_);
        return v_[static_cast<std::size_t>(i) * width_ + j];
    }

    double* row(int i) { return v_.data() + static_cast<std::size_t>(i) * width_; }
    const double* row(int i) const { return v_.data() + static_cast<std::size_t>(i) * width_; }

    std::span<double> samples() { return v_; }
    std::span<const double> samples() const { return v_; }

    bool same_size(const Plane& other) const {
        return width_ == other.width_ && height_ == other.height_;
    }

    friend bool operator==(const Plane&, const Plane&) = default;

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<double> v_;
};

/// Whole-sample mirror about the edge pixel: -k maps to k, (n-1)+k maps to
/// (n-1)-k. The reflected index differs from the original by an even offset,
/// so period-2 lattice membership is preserved. Single bounce only; callers
/// must keep the overshoot below n.
inline int mirror_index(int i, int n) {
    assert(n > 0);
    if (i < 0) i = -i;
    if (i >= n) i = 2 * (n - 1) - i;
    assert(i >= 0 && i < n);
    return i;
}

}  // namespace dofp
