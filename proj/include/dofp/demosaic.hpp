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

#include <string>
#include <string_view>

#include "dofp/dle.hpp"
#include "dofp/iccc.hpp"
#include "dofp/pfa.hpp"

namespace dofp {

/// lepd: two-stage edge-aware interpolation. leic: lepd plus the
/// inter-channel calibration pass. nearest/bilinear/bicubic: per-channel
/// single-plane baselines.
enum class Method { lepd, leic, nearest, bilinear, bicubic };

/// Accepts "lepd", "leic", "nn", "bi", "bcb" (case-insensitive).
Method method_from_string(std::string_view name);
std::string_view method_name(Method m);

struct MethodSpec {
    Method method = Method::leic;
    EdgeWeightParams edge;  // read by lepd/leic only
    GlobalWeights weights = GlobalWeights::polarization_distance();  // leic only
};

/// Routes the mosaic and the stage-1/2 planes into four full channel planes:
/// each pixel contributes its own sample to its own channel, the orthogonal
/// estimate to the orthogonal channel, and the horizontal/vertical estimates
/// to the channels of its horizontal/vertical neighbors.
ChannelStack assemble_stack(const MosaicImage& img, const Plane& orthogonal,
                            const NeighborPlanes& neighbors);

/// Full demosaicking entry point. Intermediate values are never clamped;
/// range limiting happens only on integer export.
ChannelStack demosaic(const MosaicImage& img, const MethodSpec& spec, int threads = 1);

/// Densifies one sparse channel plane whose samples sit at rows congruent to
/// row_phase and columns congruent to col_phase (mod 2). nearest picks the
/// closest sample with ties toward the top-left; bilinear applies the same
/// kernel as the calibration fill; bicubic is separable Catmull-Rom on the
/// stride-2 lattice. Borders mirror whole samples.
Plane baseline_interpolate(const Plane& sparse, int row_phase, int col_phase, Method method);

}  // namespace dofp
