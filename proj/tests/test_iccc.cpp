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

#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "dofp/evalkit.hpp"
#include "dofp/iccc.hpp"
#include "oracle.hpp"
#include "synth.hpp"

using namespace dofp;

namespace {

const ChannelMask& mask_for(const std::array<ChannelMask, 4>& masks, Channel c) {
    for (const ChannelMask& m : masks)
        if (m.angle == c) return m;
    throw std::logic_error("mask_for: channel not found");
}

}  // namespace

TEST_SUITE("iccc") {

TEST_CASE("polarization-distance weights") {
    const GlobalWeights w = GlobalWeights::polarization_distance();
    // recomputed from the defining expression
    const double denom = 1.0 + 2.0 * std::sqrt(2.0);
    CHECK(w.hv() == doctest::Approx(std::sqrt(2.0) / denom).epsilon(1e-15));
    CHECK(w.orthogonal() == doctest::Approx(1.0 / denom).epsilon(1e-15));
    // six-figure values quoted in the docs
    CHECK(w.hv() == doctest::Approx(0.369398).epsilon(1e-6));
    CHECK(w.orthogonal() == doctest::Approx(0.261204).epsilon(1e-6));
    // convexity and the sqrt(2) preference ratio
    CHECK(2.0 * w.hv() + w.orthogonal() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(w.hv() / w.orthogonal() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
}

TEST_CASE("global weight validation") {
    CHECK_NOTHROW(GlobalWeights(0.4, 0.2));
    CHECK_THROWS_AS(GlobalWeights(0.2, 0.6), std::invalid_argument);   // hv <= orthogonal
    CHECK_THROWS_AS(GlobalWeights(0.5, 0.0), std::invalid_argument);   // orthogonal <= 0
    CHECK_THROWS_AS(GlobalWeights(0.45, 0.2), std::invalid_argument);  // 2*hv + orth != 1
}

TEST_CASE("sparse difference") {
    const MosaicImage img = synth::random_mosaic(10, 8, 5u);
    const Plane estimate = synth::random_plane(10, 8, 6u, 0.0, 255.0);
    const auto masks = make_masks(img.pattern(), img.width(), img.height());
    const ChannelMask& target = mask_for(masks, Channel::deg0);

    const Plane d = sparse_difference(img, estimate, Channel::deg45, target);
    for (int i = 0; i < 8; ++i) {
        for (int j = 0; j < 10; ++j) {
            if (target.grid.at(i, j) != 0.0) {
                CHECK(d.at(i, j) == img.data().at(i, j) - estimate.at(i, j));
            } else {
                CHECK(d.at(i, j) == 0.0);
            }
        }
    }

    CHECK_THROWS_AS(sparse_difference(img, estimate, Channel::deg0, target),
                    std::invalid_argument);
    CHECK_THROWS_AS(sparse_difference(img, Plane(8, 10), Channel::deg45, target),
                    std::invalid_argument);
}

TEST_CASE("bilinear fill of a constant lattice") {
    // kernel weights over any period-2 phase class sum to 4, so a constant
    // lattice densifies to that constant everywhere
    for (int pr = 0; pr < 2; ++pr) {
        for (int pc = 0; pc < 2; ++pc) {
            Plane sparse(10, 8, 0.0);
            for (int i = pr; i < 8; i += 2)
                for (int j = pc; j < 10; j += 2) sparse.at(i, j) = 6.5;
            const Plane filled = bilinear_fill(sparse);
            for (double v : filled.samples()) CHECK(v == doctest::Approx(6.5).epsilon(1e-15));
        }
    }
}

TEST_CASE("bilinear fill of a single spike") {
    Plane sparse(12, 10, 0.0);
    sparse.at(4, 4) = 8.0;
    const Plane filled = bilinear_fill(sparse);
    CHECK(filled.at(4, 4) == 8.0);        // lattice values pass through
    CHECK(filled.at(4, 5) == 4.0);        // axis neighbor: half
    CHECK(filled.at(3, 4) == 4.0);
    CHECK(filled.at(3, 3) == 2.0);        // diagonal neighbor: quarter
    CHECK(filled.at(5, 5) == 2.0);
    CHECK(filled.at(4, 6) == 0.0);        // outside the kernel footprint
    CHECK(filled.at(6, 4) == 0.0);
}

TEST_CASE("bilinear fill matches the reference convolution") {
    const Plane dense = synth::random_plane(14, 12, 77u, -20.0, 20.0);
    for (int pr = 0; pr < 2; ++pr) {
        for (int pc = 0; pc < 2; ++pc) {
            Plane sparse(14, 12, 0.0);
            for (int i = pr; i < 12; i += 2)
                for (int j = pc; j < 14; j += 2) sparse.at(i, j) = dense.at(i, j);
            const Plane lib = bilinear_fill(sparse);
            const Plane ref = oracle::conv_fill(sparse);
            for (int i = 0; i < 12; ++i)
                for (int j = 0; j < 14; ++j)
                    CHECK(lib.at(i, j) == doctest::Approx(ref.at(i, j)).epsilon(1e-12));
            // stored values are reproduced exactly at their own lattice
            for (int i = pr; i < 12; i += 2)
                for (int j = pc; j < 14; j += 2)
                    CHECK(lib.at(i, j) == doctest::Approx(dense.at(i, j)).epsilon(1e-12));
        }
    }
}

TEST_CASE("calibration of constant data is exact") {
    const MosaicImage img(Plane(8, 6, 11.0), 8, PfaPattern::standard());
    const ChannelStack estimates(8, 6, 11.0);
    const GlobalWeights w = GlobalWeights::polarization_distance();
    for (Channel c : kAllChannels) {
        const Plane out = calibrate_channel(c, estimates, img, w);
        for (double v : out.samples()) CHECK(v == doctest::Approx(11.0).epsilon(1e-15));
    }
}

TEST_CASE("calibration restores observed samples") {
    const MosaicImage img = synth::random_mosaic(12, 10, 303u);
    const ChannelStack estimates = synth::random_stack(12, 10, 304u);
    const GlobalWeights w = GlobalWeights::polarization_distance();
    for (Channel c : kAllChannels) {
        const Plane out = calibrate_channel(c, estimates, img, w);
        const auto phase = img.pattern().phase_of(c);
        for (int i = phase.row; i < 10; i += 2)
            for (int j = phase.col; j < 12; j += 2)
                CHECK(out.at(i, j) == doctest::Approx(img.data().at(i, j)).epsilon(1e-12));
    }
}

TEST_CASE("calibration matches the reference composition") {
    const MosaicImage img = synth::random_mosaic(12, 10, 1234u);
    const ChannelStack estimates = synth::random_stack(12, 10, 4321u);
    const GlobalWeights w = GlobalWeights::polarization_distance();
    const auto masks = make_masks(img.pattern(), img.width(), img.height());

    for (Channel target : kAllChannels) {
        // literal recomposition: correct each foreign estimate by its
        // densified difference at the target lattice, then fuse
        Plane want(12, 10, 0.0);
        const ChannelMask& tmask = mask_for(masks, target);
        for (Channel source : kAllChannels) {
            if (source == target) continue;
            Plane sparse(12, 10, 0.0);
            for (int i = 0; i < 10; ++i)
                for (int j = 0; j < 12; ++j)
                    if (tmask.grid.at(i, j) != 0.0)
                        sparse.at(i, j) =
                            img.data().at(i, j) - estimates.plane(source).at(i, j);
            const Plane corr = oracle::conv_fill(sparse);
            const double wt = source == orthogonal(target) ? w.orthogonal() : w.hv();
            for (int i = 0; i < 10; ++i)
                for (int j = 0; j < 12; ++j)
                    want.at(i, j) += wt * (estimates.plane(source).at(i, j) + corr.at(i, j));
        }
        const Plane got = calibrate_channel(target, estimates, img, w);
        for (int i = 0; i < 10; ++i)
            for (int j = 0; j < 12; ++j)
                CHECK(got.at(i, j) == doctest::Approx(want.at(i, j)).epsilon(1e-12));
    }
}

TEST_CASE("exact estimates are left unchanged") {
    // when every estimate already agrees with the mosaic at the observed
    // positions, all corrections vanish and calibration reduces to the
    // weighted average of the estimates
    const Plane field = synth::random_plane(10, 8, 55u, 10.0, 200.0);
    std::array<Plane, 4> planes = {field, field, field, field};
    const ChannelStack stack(std::move(planes));
    const MosaicImage img = mosaic_from_stack(stack, PfaPattern::standard());
    const GlobalWeights w = GlobalWeights::polarization_distance();
    for (Channel c : kAllChannels) {
        const Plane out = calibrate_channel(c, stack, img, w);
        for (int i = 0; i < 8; ++i)
            for (int j = 0; j < 10; ++j)
                CHECK(out.at(i, j) == doctest::Approx(field.at(i, j)).epsilon(1e-12));
    }
}

}  // TEST_SUITE
