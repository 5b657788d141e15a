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

/// Fusion weights for the three per-channel corrections: the two
/// non-orthogonal corrections each get `hv`, the orthogonal one gets
/// `orthogonal`. Construction enforces 2*hv + orthogonal == 1 and
/// hv > orthogonal > 0.
class GlobalWeights {
public:
    GlobalWeights(double hv, double orthogonal);

    /// Weights derived from the inter-channel polarization distance:
    /// hv = sqrt(2)/(1 + 2*sqrt(2)), orthogonal = 1/(1 + 2*sqrt(2)).
    static GlobalWeights polarization_distance();

    double hv() const { return hv_; }
    double orthogonal() const { return orthogonal_; }

private:
    double hv_;
    double orthogonal_;
};

/// Difference between observed mosaic values and the channel-c estimate,
/// kept only at the target channel's sample positions (zero elsewhere).
/// Throws if the estimate's channel equals the mask's channel.
Plane sparse_difference(const MosaicImage& img, const Plane& estimate, Channel source,
                        const ChannelMask& target_mask);

/// Densifies a plane whose nonzeros sit on a period-2 lattice with the
/// separable bilinear kernel [1 2 1]/2 x [1 2 1]/2. At the lattice positions
/// the stored values pass through exactly (center tap 1, every other tap
/// lands on a lattice zero). Borders use the whole-sample mirror, which
/// keeps lattice phase.
Plane bilinear_fill(const Plane& sparse);

/// One calibration pass for channel `target`: each other channel's estimate
/// is shifted by its densified difference-to-target plane and the three
/// corrected planes are fused with the global weights. At the target
/// channel's own sample positions the result equals the raw mosaic.
Plane calibrate_channel(Channel target, const ChannelStack& estimates, const MosaicImage& img,
                        const GlobalWeights& weights);

}  // namespace dofp
