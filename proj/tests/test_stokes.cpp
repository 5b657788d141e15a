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
#include <limits>

#include "doctest.h"
#include "dofp/stokes.hpp"
#include "synth.hpp"

using namespace dofp;

namespace {

constexpr double kPi = 3.14159265358979323846;

ChannelStack single_pixel_stack(double i0, double i45, double i90, double i135) {
    ChannelStack s(6, 6);
    s.plane(Channel::deg0) = Plane(6, 6, i0);
    s.plane(Channel::deg45) = Plane(6, 6, i45);
    s.plane(Channel::deg90) = Plane(6, 6, i90);
    s.plane(Channel::deg135) = Plane(6, 6, i135);
    return s;
}

std::array<std::uint8_t, 3> pixel(const Rgb8Image& img, int i, int j) {
    const std::size_t base = 3 * (static_cast<std::size_t>(i) * img.width + j);
    return {img.rgb[base], img.rgb[base + 1], img.rgb[base + 2]};
}

}  // namespace

TEST_SUITE("stokes") {

TEST_CASE("stokes components") {
    const ChannelStack stack = single_pixel_stack(2.0, 3.0, 1.0, 0.0);
    const StokesImage st = stokes_from_stack(stack);
    CHECK(st.s0.at(0, 0) == doctest::Approx(3.0));   // half the channel sum
    CHECK(st.s1.at(0, 0) == doctest::Approx(1.0));   // I0 - I90
    CHECK(st.s2.at(0, 0) == doctest::Approx(3.0));   // I45 - I135

    // elementwise on a random stack
    const ChannelStack r = synth::random_stack(8, 6, 9u);
    const StokesImage rs = stokes_from_stack(r);
    for (int i = 0; i < 6; ++i) {
        for (int j = 0; j < 8; ++j) {
            const double i0 = r.plane(Channel::deg0).at(i, j);
            const double i45 = r.plane(Channel::deg45).at(i, j);
            const double i90 = r.plane(Channel::deg90).at(i, j);
            const double i135 = r.plane(Channel::deg135).at(i, j);
            CHECK(rs.s0.at(i, j) == doctest::Approx(0.5 * (i0 + i45 + i90 + i135)));
            CHECK(rs.s1.at(i, j) == doctest::Approx(i0 - i90));
            CHECK(rs.s2.at(i, j) == doctest::Approx(i45 - i135));
        }
    }
}

TEST_CASE("dolp and aolp") {
    // fully polarized at 45 degrees: s = (2, 0, 2)
    StokesImage st{Plane(6, 6, 2.0), Plane(6, 6, 0.0), Plane(6, 6, 2.0)};
    PolarizationView v = dolp_aolp(st);
    CHECK(v.dolp.at(0, 0) == doctest::Approx(1.0));
    CHECK(v.aolp.at(0, 0) == doctest::Approx(kPi / 4.0));

    // horizontal: s = (1, 1, 0)
    st = StokesImage{Plane(6, 6, 1.0), Plane(6, 6, 1.0), Plane(6, 6, 0.0)};
    v = dolp_aolp(st);
    CHECK(v.dolp.at(0, 0) == doctest::Approx(1.0));
    CHECK(v.aolp.at(0, 0) == doctest::Approx(0.0));

    // unpolarized
    st = StokesImage{Plane(6, 6, 5.0), Plane(6, 6, 0.0), Plane(6, 6, 0.0)};
    v = dolp_aolp(st);
    CHECK(v.dolp.at(0, 0) == 0.0);
    CHECK(v.aolp.at(0, 0) == 0.0);

    // dark pixels (s0 below eps) report zero dolp instead of dividing by ~0
    st = StokesImage{Plane(6, 6, 0.0), Plane(6, 6, 1e-15), Plane(6, 6, 0.0)};
    v = dolp_aolp(st);
    CHECK(v.dolp.at(0, 0) == 0.0);
}

TEST_CASE("dolp and aolp are invariant under intensity scaling") {
    const ChannelStack stack = synth::random_stack(8, 6, 21u, 1.0, 255.0);
    const PolarizationView base = dolp_aolp(stokes_from_stack(stack));
    ChannelStack scaled = stack;
    for (Channel c : kAllChannels)
        for (double& x : scaled.plane(c).samples()) x *= 3.7;
    const PolarizationView s = dolp_aolp(stokes_from_stack(scaled));
    for (std::size_t n = 0; n < base.dolp.size(); ++n) {
        CHECK(s.dolp.samples()[n] == doctest::Approx(base.dolp.samples()[n]).epsilon(1e-12));
        CHECK(s.aolp.samples()[n] == doctest::Approx(base.aolp.samples()[n]).epsilon(1e-12));
    }
}

TEST_CASE("malus stack round trip") {
    const int w = 12, h = 10;
    const Plane s0 = synth::random_plane(w, h, 31u, 50.0, 200.0);
    const Plane dolp = synth::random_plane(w, h, 32u, 0.0, 0.9);
    const Plane aolp = synth::random_plane(w, h, 33u, -1.5, 1.5);
    const ChannelStack stack = synth::malus_stack(s0, dolp, aolp);
    const PolarizationView v = dolp_aolp(stokes_from_stack(stack));
    const StokesImage st = stokes_from_stack(stack);
    for (int i = 0; i < h; ++i) {
        for (int j = 0; j < w; ++j) {
            CHECK(st.s0.at(i, j) == doctest::Approx(s0.at(i, j)).epsilon(1e-9));
            CHECK(v.dolp.at(i, j) == doctest::Approx(dolp.at(i, j)).epsilon(1e-9));
            CHECK(v.aolp.at(i, j) == doctest::Approx(aolp.at(i, j)).epsilon(1e-9));
        }
    }
}

TEST_CASE("aolp stays in the principal range") {
    const ChannelStack stack = synth::random_stack(16, 14, 77u, 0.0, 255.0);
    const PolarizationView v = dolp_aolp(stokes_from_stack(stack));
    for (double a : v.aolp.samples()) {
        CHECK(a > -kPi / 2.0 - 1e-15);
        CHECK(a <= kPi / 2.0 + 1e-15);
    }
}

TEST_CASE("parula table anchors") {
    const auto& t = parula_table();
    CHECK(t[0][0] == 53);
    CHECK(t[0][1] == 42);
    CHECK(t[0][2] == 135);
    CHECK(t[128][0] == 38);
    CHECK(t[128][1] == 170);
    CHECK(t[128][2] == 181);
    CHECK(t[255][0] == 249);
    CHECK(t[255][1] == 251);
    CHECK(t[255][2] == 14);
}

TEST_CASE("parula render indexes the table") {
    Plane p(4, 2, 0.0);
    p.at(0, 1) = 1.0;
    p.at(0, 2) = 0.5;
    p.at(0, 3) = 2.0;   // clamped to 1
    p.at(1, 0) = -3.0;  // clamped to 0
    p.at(1, 1) = std::numeric_limits<double>::quiet_NaN();
    const Rgb8Image img = render_pseudocolor(p, Colormap::parula256);
    CHECK(img.width == 4);
    CHECK(img.height == 2);
    CHECK(img.rgb.size() == 24);
    const auto& t = parula_table();
    CHECK(pixel(img, 0, 0) == std::array<std::uint8_t, 3>{t[0][0], t[0][1], t[0][2]});
    CHECK(pixel(img, 0, 1) == std::array<std::uint8_t, 3>{t[255][0], t[255][1], t[255][2]});
    CHECK(pixel(img, 0, 2) == std::array<std::uint8_t, 3>{t[128][0], t[128][1], t[128][2]});
    CHECK(pixel(img, 0, 3) == std::array<std::uint8_t, 3>{t[255][0], t[255][1], t[255][2]});
    CHECK(pixel(img, 1, 0) == std::array<std::uint8_t, 3>{t[0][0], t[0][1], t[0][2]});
    CHECK(pixel(img, 1, 1) == std::array<std::uint8_t, 3>{0, 0, 0});  // non-finite -> black
}

TEST_CASE("hsv angle render") {
    Plane p(3, 1, 0.0);
    p.at(0, 1) = -kPi / 4.0;
    p.at(0, 2) = kPi / 4.0;
    const Rgb8Image img = render_pseudocolor(p, Colormap::hsv_angle);
    // aolp 0 -> hue 180 (cyan)
    CHECK(pixel(img, 0, 0) == std::array<std::uint8_t, 3>{0, 255, 255});
    // aolp -pi/4 -> hue 0 (red); +pi/4 wraps to the same hue
    CHECK(pixel(img, 0, 1) == std::array<std::uint8_t, 3>{255, 0, 0});
    CHECK(pixel(img, 0, 2) == std::array<std::uint8_t, 3>{255, 0, 0});
}

TEST_CASE("gray render and minmax scaling") {
    Plane p(3, 1, 10.0);
    p.at(0, 1) = 20.0;
    p.at(0, 2) = 30.0;
    const Rgb8Image img = render_pseudocolor(p, Colormap::gray, Scaling::minmax);
    CHECK(pixel(img, 0, 0) == std::array<std::uint8_t, 3>{0, 0, 0});
    CHECK(pixel(img, 0, 1) == std::array<std::uint8_t, 3>{128, 128, 128});
    CHECK(pixel(img, 0, 2) == std::array<std::uint8_t, 3>{255, 255, 255});

    // a constant plane has no range; minmax maps it to the low end
    const Rgb8Image flat = render_pseudocolor(Plane(4, 4, 9.0), Colormap::gray, Scaling::minmax);
    CHECK(pixel(flat, 2, 2) == std::array<std::uint8_t, 3>{0, 0, 0});
}

}  // TEST_SUITE
