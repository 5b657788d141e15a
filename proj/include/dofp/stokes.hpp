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

#include <array>
#include <cstdint>
#include <vector>

#include "dofp/pfa.hpp"
#include "dofp/plane.hpp"

namespace dofp {

/// Linear Stokes components in the radiometric scale of the input stack:
/// s0 = (I0 + I45 + I90 + I135)/2, s1 = I0 - I90, s2 = I45 - I135.
/// Interpolated stacks may violate |s1|,|s2| <= 2*s0; only finiteness is a
/// contract here.
struct StokesImage {
    Plane s0;
    Plane s1;
    Plane s2;
};

StokesImage stokes_from_stack(const ChannelStack& stack);

/// dolp = sqrt(s1^2 + s2^2)/s0 (0 where s0 <= eps); aolp = atan2(s2, s1)/2,
/// principal range (-pi/2, pi/2]. atan2 keeps the angle well defined for
/// s1 <= 0, which a plain arctan of s2/s1 would lose.
struct PolarizationView {
    Plane dolp;
    Plane aolp;
};

PolarizationView dolp_aolp(const StokesImage& st, double eps = 1e-12);

/// Tightly packed 8-bit RGB raster (3 bytes per pixel, row-major).
struct Rgb8Image {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> rgb;
};

enum class Colormap {
    parula256,  // 256-entry parula-style gradient lookup
    hsv_angle,  // input is aolp in radians; hue = (aolp + pi/4)/(pi/2) * 360
    gray
};

/// How scalar input is brought to [0, 1] before the parula256/gray lookup
/// (ignored by hsv_angle): clamp_unit clamps, for quantities already on a
/// unit scale; minmax normalizes by the plane's own range (constant planes
/// map to 0).
enum class Scaling { clamp_unit, minmax };

/// Non-finite pixels render as black. Renders are bit-reproducible; the
/// parula table is embedded and versioned (see data/parula256.csv).
Rgb8Image render_pseudocolor(const Plane& values, Colormap map,
                             Scaling scaling = Scaling::clamp_unit);

/// The embedded 256-entry RGB lookup table behind Colormap::parula256.
const std::array<std::array<std::uint8_t, 3>, 256>& parula_table();

}  // namespace dofp
