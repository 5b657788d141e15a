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

#include "dofp/stokes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace dofp {

namespace {

const std::array<std::array<std::uint8_t, 3>, 256> kParula = {{
#include "parula256.inc"
}};

inline std::uint8_t to_byte(double v) {
    return static_cast<std::uint8_t>(std::lround(255.0 * v));
}

// hue in degrees, anything; saturation = value = 1.
void hue_to_rgb(double hue, std::uint8_t* out) {
    double h = std::fmod(hue, 360.0);
    if (h < 0.0) h += 360.0;
    if (h >= 360.0) h = 0.0;
    const double hp = h / 60.0;
    const double x = 1.0 - std::fabs(std::fmod(hp, 2.0) - 1.0);
    double r = 0.0, g = 0.0, b = 0.0;
    switch (static_cast<int>(hp)) {
        case 0: r = 1.0; g = x; break;
        case 1: r = x; g = 1.0; break;
        case 2: g = 1.0; b = x; break;
        case 3: g = x; b = 1.0; break;
        case 4: r = x; b = 1.0; break;
        default: r = 1.0; b = x; break;
    }
    out[0] = to_byte(r);
    out[1] = to_byte(g);
    out[2] = to_byte(b);
}

// Affine map to [0, 1]. clamp_unit is the identity on [0, 1]; minmax uses the
// finite range of the plane (a constant plane maps to 0).
struct UnitScale {
    double offset = 0.0;
    double gain = 1.0;

    static UnitScale from(const Plane& p, Scaling scaling) {
        UnitScale s;
        if (scaling == Scaling::clamp_unit) return s;
        double lo = std::numeric_limits<double>::infinity();
        double hi = -std::numeric_limits<double>::infinity();
        for (double v : p.samples()) {
            if (!std::isfinite(v)) continue;
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        if (lo < hi) {
            s.offset = lo;
            s.gain = 1.0 / (hi - lo);
        } else {
            s.offset = std::isfinite(lo) ? lo : 0.0;
            s.gain = 0.0;
        }
        return s;
    }

    double operator()(double v) const {
        return std::clamp((v - offset) * gain, 0.0, 1.0);
    }
};

}  // namespace

StokesImage stokes_from_stack(const ChannelStack& stack) {
    const Plane& i0 = stack.plane(Channel::deg0);
    const Plane& i45 = stack.plane(Channel::deg45);
    const Plane& i90 = stack.plane(Channel::deg90);
    const Plane& i135 = stack.plane(Channel::deg135);

    StokesImage st;
    st.s0 = Plane(i0.width(), i0.height());
    st.s1 = Plane(i0.width(), i0.height());
    st.s2 = Plane(i0.width(), i0.height());
    const std::size_t n = i0.size();
    for (std::size_t k = 0; k < n; ++k) {
        const double a = i0.samples()[k];
        const double b = i45.samples()[k];
        const double c = i90.samples()[k];
        const double d = i135.samples()[k];
        st.s0.samples()[k] = 0.5 * (a + b + c + d);
        st.s1.samples()[k] = a - c;
        st.s2.samples()[k] = b - d;
    }
    return st;
}

PolarizationView dolp_aolp(const StokesImage& st, double eps) {
    PolarizationView view;
    view.dolp = Plane(st.s0.width(), st.s0.height());
    view.aolp = Plane(st.s0.width(), st.s0.height());
    const std::size_t n = st.s0.size();
    for (std::size_t k = 0; k < n; ++k) {
        const double s0 = st.s0.samples()[k];
        const double s1 = st.s1.samples()[k];
        const double s2 = st.s2.samples()[k];
        view.dolp.samples()[k] = (s0 <= eps) ? 0.0 : std::hypot(s1, s2) / s0;
        view.aolp.samples()[k] = 0.5 * std::atan2(s2, s1);
    }
    return view;
}

Rgb8Image render_pseudocolor(const Plane& values, Colormap map, Scaling scaling) {
    Rgb8Image out;
    out.width = values.width();
    out.height = values.height();
    out.rgb.assign(values.size() * 3, 0);

    if (map == Colormap::hsv_angle) {
        constexpr double kQuarterPi = 0.78539816339744830962;
        for (std::size_t k = 0; k < values.size(); ++k) {
            const double a = values.samples()[k];
            if (!std::isfinite(a)) continue;  // stays black
            const double hue = (a + kQuarterPi) / (2.0 * kQuarterPi) * 360.0;
            hue_to_rgb(hue, &out.rgb[3 * k]);
        }
        return out;
    }

    const UnitScale scale = UnitScale::from(values, scaling);
    for (std::size_t k = 0; k < values.size(); ++k) {
        const double v = values.samples()[k];
        if (!std::isfinite(v)) continue;
        const double u = scale(v);
        std::uint8_t* px = &out.rgb[3 * k];
        if (map == Colormap::gray) {
            px[0] = px[1] = px[2] = to_byte(u);
        } else {
            const auto& rgb = kParula[static_cast<std::size_t>(std::lround(u * 255.0))];
            px[0] = rgb[0];
            px[1] = rgb[1];
            px[2] = rgb[2];
        }
    }
    return out;
}

const std::array<std::array<std::uint8_t, 3>, 256>& parula_table() {
    return kParula;
}

}  // namespace dofp
