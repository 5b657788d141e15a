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

#include "dofp/pfa.hpp"
#include "dofp/plane.hpp"

namespace dofp {

/// How a directional weight is derived from the two variation measures.
/// The logistic rule is the default; the hard ternary classifier is kept as
/// an ablation option.
enum class DecisionRule { logistic, ternary };

/// Source of the dynamic range that scales the logistic steepness: the
/// measured sample range (default, adapts to scene contrast) or the full
/// container range implied by the bit depth.
enum class RangeMode { sample_range, bit_depth };

struct EdgeWeightParams {
    double k0 = 1.0;  // steepness at a dynamic range of 255
    DecisionRule rule = DecisionRule::logistic;
    double ternary_threshold = 0.0;  // only read when rule == ternary
    RangeMode range_mode = RangeMode::sample_range;
};

/// max - min of the mosaic samples. Zero for a constant frame.
double dynamic_range(const MosaicImage& img);

/// Steepness k = k0 * DR / 255, with DR per params.range_mode. The divisor
/// stays 255 regardless of bit depth; DR is measured in native units.
double edge_steepness(const MosaicImage& img, const EdgeWeightParams& params);

/// 1 / (1 + e^(k * delta_v)). Decreasing in delta_v, 0.5 at zero, and the
/// complement of itself under negation: f(-d) = 1 - f(d). Saturates cleanly
/// for huge |k * delta_v| instead of overflowing.
double logistic_weight(double delta_v, double k);

/// Hard three-way classifier: 0 below -threshold, 1 above +threshold, 0.5 in
/// between. Note the orientation: this function *increases* with delta_v,
/// opposite to logistic_weight; the estimators feed it the negated argument
/// so that both rules favor the lower-variation direction.
double ternary_weight(double delta_v, double threshold);

/// Local intensity variation along the two diagonals at (i, j): first plus
/// rescaled second directional difference, stencil taps mirrored at borders.
struct DiagonalVariation {
    double diagonal;
    double antidiagonal;
};
DiagonalVariation diagonal_variations(const MosaicImage& img, int i, int j);

/// Stage 1: for every pixel, the edge-aware estimate of the channel
/// orthogonal to that pixel's own channel (whose samples sit at its diagonal
/// neighbors). Output has the mosaic's dimensions.
Plane estimate_orthogonal_plane(const MosaicImage& img, const EdgeWeightParams& params,
                                int threads = 1);

/// Elementwise mosaic minus orthogonal-plane estimate. Throws on size
/// mismatch.
Plane orthogonal_difference(const MosaicImage& img, const Plane& orthogonal);

/// Horizontal/vertical variation of the channel-difference plane at (i, j),
/// mirrored at borders. Used as the edge measure for stage 2.
struct AxisVariation {
    double horizontal;
    double vertical;
};
AxisVariation axis_variations(const Plane& difference, int i, int j);

/// Stage 2 output: per pixel, the estimates of the channels found at its
/// horizontal and at its vertical neighbors.
struct NeighborPlanes {
    Plane horizontal;
    Plane vertical;
};

/// Stage 2: estimates the two non-orthogonal channels at every pixel, taking
/// directional means from the mosaic along one axis and from the orthogonal
/// plane along the other, corrected by mosaic curvature and blended with
/// weights driven by the difference-plane variations.
NeighborPlanes estimate_neighbor_planes(const MosaicImage& img, const Plane& orthogonal,
                                        const EdgeWeightParams& params, int threads = 1);

}  // namespace dofp
