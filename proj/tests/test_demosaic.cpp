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

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "dofp/demosaic.hpp"
#include "dofp/evalkit.hpp"
#include "oracle.hpp"
#include "synth.hpp"

using namespace dofp;

namespace {

double max_abs_diff(const Plane& a, const Plane& b) {
    REQUIRE(a.same_size(b));
    double worst = 0.0;
    for (std::size_t n = 0; n < a.size(); ++n)
        worst = std::max(worst, std::abs(a.samples()[n] - b.samples()[n]));
    return worst;
}

double max_abs_diff(const ChannelStack& a, const ChannelStack& b) {
    double worst = 0.0;
    for (Channel c : kAllChannels) worst = std::max(worst, max_abs_diff(a.plane(c), b.plane(c)));
    return worst;
}

constexpr Method kAllMethods[] = {Method::lepd, Method::leic, Method::nearest, Method::bilinear,
                                  Method::bicubic};

}  // namespace

TEST_SUITE("demosaic") {

TEST_CASE("method names") {
    CHECK(method_from_string("lepd") == Method::lepd);
    CHECK(method_from_string("LEIC") == Method::leic);
    CHECK(method_from_string("nn") == Method::nearest);
    CHECK(method_from_string("nearest") == Method::nearest);
    CHECK(method_from_string("bi") == Method::bilinear);
    CHECK(method_from_string("Bilinear") == Method::bilinear);
    CHECK(method_from_string("bcb") == Method::bicubic);
    CHECK(method_from_string("bicubic") == Method::bicubic);
    CHECK_THROWS_AS(method_from_string("fancy"), std::invalid_argument);
    for (Method m : kAllMethods) CHECK(method_from_string(method_name(m)) == m);
}

TEST_CASE("baseline_interpolate validation") {
    const Plane sparse(8, 8, 0.0);
    CHECK_THROWS_AS(baseline_interpolate(sparse, 2, 0, Method::nearest), std::invalid_argument);
    CHECK_THROWS_AS(baseline_interpolate(sparse, 0, -1, Method::nearest), std::invalid_argument);
    CHECK_THROWS_AS(baseline_interpolate(sparse, 0, 0, Method::lepd), std::invalid_argument);
}

TEST_CASE("nearest fill copies the closest sample, ties to the top-left") {
    Plane sparse(6, 6, 0.0);
    for (int i = 0; i < 6; i += 2)
        for (int j = 0; j < 6; j += 2) sparse.at(i, j) = 10.0 * i + j;
    const Plane out = baseline_interpolate(sparse, 0, 0, Method::nearest);
    CHECK(out.at(0, 0) == 0.0);
    CHECK(out.at(1, 1) == 0.0);    // both axes tie toward the smaller index
    CHECK(out.at(1, 2) == 2.0);
    CHECK(out.at(2, 1) == 20.0);
    CHECK(out.at(3, 3) == 22.0);
    CHECK(out.at(5, 5) == 44.0);

    // literal dense reference on a random lattice, all four phases
    const Plane dense = synth::random_plane(10, 8, 42u, 0.0, 100.0);
    for (int pr = 0; pr < 2; ++pr) {
        for (int pc = 0; pc < 2; ++pc) {
            Plane sp(10, 8, 0.0);
            for (int i = pr; i < 8; i += 2)
                for (int j = pc; j < 10; j += 2) sp.at(i, j) = dense.at(i, j);
            const Plane nn = baseline_interpolate(sp, pr, pc, Method::nearest);
            for (int i = 0; i < 8; ++i) {
                for (int j = 0; j < 10; ++j) {
                    int si = (i % 2 == pr) ? i : i - 1;
                    if (si < 0) si = i + 1;
                    int sj = (j % 2 == pc) ? j : j - 1;
                    if (sj < 0) sj = j + 1;
                    CHECK(nn.at(i, j) == sp.at(si, sj));
                }
            }
        }
    }
}

TEST_CASE("bilinear baseline agrees with the calibration fill") {
    Plane sparse(10, 8, 0.0);
    const Plane dense = synth::random_plane(10, 8, 43u, -5.0, 5.0);
    for (int i = 1; i < 8; i += 2)
        for (int j = 0; j < 10; j += 2) sparse.at(i, j) = dense.at(i, j);
    const Plane a = baseline_interpolate(sparse, 1, 0, Method::bilinear);
    const Plane b = bilinear_fill(sparse);
    CHECK(max_abs_diff(a, b) == 0.0);
}

TEST_CASE("bicubic fill hits the Catmull-Rom midpoint") {
    Plane sparse(8, 2, 0.0);
    const double f[4] = {3.0, 7.0, 2.0, 9.0};
    for (int t = 0; t < 4; ++t) {
        sparse.at(0, 2 * t) = f[t];
        sparse.at(1, 2 * t) = f[t];
    }
    const Plane out = baseline_interpolate(sparse, 0, 0, Method::bicubic);
    // midpoint of the four-tap window [f0 f1 f2 f3]
    CHECK(out.at(0, 3) == doctest::Approx((-f[0] + 9.0 * f[1] + 9.0 * f[2] - f[3]) / 16.0));
    // lattice samples pass through untouched
    CHECK(out.at(0, 4) == f[2]);
}

TEST_CASE("bicubic fill reproduces cubic polynomials away from borders") {
    const int n = 16;
    auto g = [](double t) { return 0.5 * t * t * t - 3.0 * t * t + 2.0 * t + 40.0; };
    auto hpoly = [](double t) { return -0.25 * t * t * t + t * t - 5.0 * t + 30.0; };
    Plane sparse(n, n, 0.0);
    for (int i = 0; i < n; i += 2)
        for (int j = 0; j < n; j += 2) sparse.at(i, j) = g(i * 0.25) * hpoly(j * 0.25);
    const Plane out = baseline_interpolate(sparse, 0, 0, Method::bicubic);
    for (int i = 3; i < n - 3; ++i)
        for (int j = 3; j < n - 3; ++j)
            CHECK(out.at(i, j) ==
                  doctest::Approx(g(i * 0.25) * hpoly(j * 0.25)).epsilon(1e-12));
}

TEST_CASE("assemble_stack routes estimates by neighbor channel") {
    const MosaicImage img = synth::random_mosaic(8, 6, 17u);
    const Plane orth(8, 6, 1000.0);
    const NeighborPlanes nb{Plane(8, 6, 2000.0), Plane(8, 6, 3000.0)};
    const ChannelStack stack = assemble_stack(img, orth, nb);
    const PfaPattern& pat = img.pattern();
    for (int i = 0; i < 6; ++i) {
        for (int j = 0; j < 8; ++j) {
            const Channel own = pat.at(i, j);
            CHECK(stack.plane(own).at(i, j) == img.data().at(i, j));
            CHECK(stack.plane(orthogonal(own)).at(i, j) == 1000.0);
            CHECK(stack.plane(pat.at(i, j + 1)).at(i, j) == 2000.0);
            CHECK(stack.plane(pat.at(i + 1, j)).at(i, j) == 3000.0);
        }
    }
    CHECK_THROWS_AS(assemble_stack(img, Plane(6, 8), nb), std::invalid_argument);
}

TEST_CASE("constant mosaic is reproduced exactly by every method") {
    const MosaicImage img(Plane(12, 10, 77.0), 8, PfaPattern::standard());
    for (Method m : kAllMethods) {
        MethodSpec spec;
        spec.method = m;
        const ChannelStack out = demosaic(img, spec);
        for (Channel c : kAllChannels)
            for (double v : out.plane(c).samples())
                CHECK(v == doctest::Approx(77.0).epsilon(1e-14));
    }
}

TEST_CASE("constant-per-channel stack is a fixed point of every method") {
    ChannelStack gt(12, 10);
    gt.plane(Channel::deg0) = Plane(12, 10, 40.0);
    gt.plane(Channel::deg45) = Plane(12, 10, 90.0);
    gt.plane(Channel::deg90) = Plane(12, 10, 160.0);
    gt.plane(Channel::deg135) = Plane(12, 10, 210.0);
    const MosaicImage img = mosaic_from_stack(gt, PfaPattern::standard());
    for (Method m : kAllMethods) {
        MethodSpec spec;
        spec.method = m;
        const ChannelStack out = demosaic(img, spec);
        CHECK(max_abs_diff(out, gt) <= 1e-12);
    }
}

TEST_CASE("estimators keep observed samples untouched") {
    const MosaicImage img = synth::random_mosaic(16, 14, 2024u);
    for (Method m : kAllMethods) {
        MethodSpec spec;
        spec.method = m;
        const ChannelStack out = demosaic(img, spec);
        for (int i = 0; i < 14; ++i)
            for (int j = 0; j < 16; ++j)
                CHECK(out.plane(img.channel_at(i, j)).at(i, j) ==
                      doctest::Approx(img.data().at(i, j)).epsilon(1e-12));
    }
}

TEST_CASE("lepd matches the reference pipeline") {
    for (std::uint32_t seed : {1u, 2u}) {
        const MosaicImage img = synth::random_mosaic(64, 64, seed);
        MethodSpec spec;
        spec.method = Method::lepd;
        const ChannelStack lib = demosaic(img, spec);
        const ChannelStack ref = oracle::lepd(img, spec.edge);
        CHECK(max_abs_diff(lib, ref) <= 1e-9);
    }
}

TEST_CASE("leic matches the reference pipeline") {
    const GlobalWeights w = GlobalWeights::polarization_distance();
    for (std::uint32_t seed : {3u, 4u}) {
        const MosaicImage img = synth::random_mosaic(64, 64, seed);
        MethodSpec spec;
        spec.method = Method::leic;
        const ChannelStack lib = demosaic(img, spec);
        const ChannelStack ref = oracle::leic(img, spec.edge, w.hv(), w.orthogonal());
        CHECK(max_abs_diff(lib, ref) <= 1e-9);
    }
}

TEST_CASE("pipelines commute with pattern phase shifts in the interior") {
    const int n = 26, m = 24, margin = 6;
    const Plane base = synth::random_plane(n, n, 555u, 0.0, 255.0);
    Plane window(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) window.at(i, j) = base.at(i + 1, j + 1);

    Plane full(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) full.at(i, j) = base.at(i, j);

    const MosaicImage img_a(std::move(full), 8, PfaPattern::standard());
    const MosaicImage img_b(std::move(window), 8, PfaPattern::standard().shifted(1, 1));

    for (Method method : {Method::lepd, Method::leic}) {
        MethodSpec spec;
        spec.method = method;
        // fixed steepness: the two frames must not measure different sample
        // ranges, or the weights (and thus the outputs) would differ
        spec.edge.range_mode = RangeMode::bit_depth;
        const ChannelStack out_a = demosaic(img_a, spec);
        const ChannelStack out_b = demosaic(img_b, spec);
        for (Channel c : kAllChannels) {
            for (int i = margin; i < m - margin; ++i) {
                for (int j = margin; j < m - margin; ++j) {
                    CHECK(out_b.plane(c).at(i, j) ==
                          doctest::Approx(out_a.plane(c).at(i + 1, j + 1)).epsilon(1e-9));
                }
            }
        }
    }
}

TEST_CASE("adding a constant offset shifts the output by that constant") {
    const MosaicImage img = synth::random_mosaic(16, 16, 808u);
    const double offset = 35.0;
    Plane lifted = img.data();
    for (double& v : lifted.samples()) v += offset;
    const MosaicImage img_up(std::move(lifted), 8, img.pattern());

    for (Method m : kAllMethods) {
        MethodSpec spec;
        spec.method = m;
        const ChannelStack lo = demosaic(img, spec);
        const ChannelStack hi = demosaic(img_up, spec);
        for (Channel c : kAllChannels)
            for (std::size_t k = 0; k < lo.plane(c).size(); ++k)
                CHECK(hi.plane(c).samples()[k] ==
                      doctest::Approx(lo.plane(c).samples()[k] + offset).epsilon(1e-9));
    }
}

TEST_CASE("deterministic and thread-count independent") {
    const MosaicImage img = synth::random_mosaic(32, 30, 606u);
    for (Method m : {Method::lepd, Method::leic}) {
        MethodSpec spec;
        spec.method = m;
        const ChannelStack a = demosaic(img, spec, 1);
        const ChannelStack b = demosaic(img, spec, 1);
        const ChannelStack c = demosaic(img, spec, 4);
        CHECK(a == b);
        CHECK(a == c);
    }
}

}  // TEST_SUITE
