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
#include <string>
#include <string_view>

#include "dofp/plane.hpp"

namespace dofp {

/// One of the four linear polarizer orientations of a quad-polarizer array.
enum class Channel : int { deg0 = 0, deg45 = 1, deg90 = 2, deg135 = 3 };

inline constexpr std::array<Channel, 4> kAllChannels = {
    Channel::deg0, Channel::deg45, Channel::deg90, Channel::deg135};

constexpr int channel_index(Channel c) { return static_cast<int>(c); }
constexpr int channel_degrees(Channel c) { return 45 * channel_index(c); }

/// "I0", "I45", "I90", "I135" -- the labels used in reports and file names.
const char* channel_name(Channel c);

/// Maps 0/45/90/135 to a Channel; anything else throws std::invalid_argument.
Channel channel_from_degrees(int degrees);

/// The 90-degree partner: 0<->90, 45<->135. An involution with no fixed point.
constexpr Channel orthogonal(Channel c) {
    return static_cast<Channel>((channel_index(c) + 2) % 4);
}

/// 2x2 tile of polarizer angles, period 2 in both axes. tile[r][c] is the
/// channel of every pixel (i, j) with i mod 2 == r and j mod 2 == c.
///
/// A valid tile holds all four channels and places orthogonal channels on the
/// diagonals (tile[0][0] orthogonal to tile[1][1], tile[0][1] to tile[1][0]).
/// The interpolation stencils rely on that structure: each pixel's diagonal
/// neighbors carry its orthogonal channel, and its horizontal/vertical
/// neighbors carry the remaining orthogonal pair.
class PfaPattern {
public:
    /// Validates and wraps a tile; throws std::invalid_argument otherwise.
    static PfaPattern from_tile(const std::array<std::array<Channel, 2>, 2>& tile);

    /// Parses "90,45;135,0" (rows split by ';', angles by ',').
    static PfaPattern parse(std::string_view text);

    /// [[90, 45], [135, 0]], the layout of common commercial quad-polarizer
    /// sensors. Used whenever no pattern is configured.
    static PfaPattern standard();

    /// Channel of pixel (i, j); periodic, so any integers are accepted.
    Channel at(long long i, long long j) const {
        return tile_[static_cast<int>(((i % 2) + 2) % 2)][static_cast<int>(((j % 2) + 2) % 2)];
    }

    const std::array<std::array<Channel, 2>, 2>& tile() const { return tile_; }

    /// Same physical array seen from an origin shifted by (di, dj).
    PfaPattern shifted(int di, int dj) const;

    /// Row/column phase (parities) of the given channel's sample lattice.
    struct Phase {
        int row;
        int col;
    };
    Phase phase_of(Channel c) const;

    std::string to_string() const;

    friend bool operator==(const PfaPattern&, const PfaPattern&) = default;

private:
    explicit PfaPattern(const std::array<std::array<Channel, 2>, 2>& tile) : tile_(tile) {}
    std::array<std::array<Channel, 2>, 2> tile_;
};

/// Single-plane raw DoFP frame: the sensor readout with its PFA layout and
/// source bit depth. Samples are stored as doubles but must be finite and
/// nonnegative; they are not required to stay within the bit-depth range.
class MosaicImage {
public:
    /// Requires width and height even and >= 6 (room for one 5x5 stencil over
    /// whole tiles), finite nonnegative samples, bit depth in [1, 16].
    MosaicImage(Plane data, int bit_depth, PfaPattern pattern);

    const Plane& data() const { return data_; }
    int width() const { return data_.width(); }
    int height() const { return data_.height(); }
    int bit_depth() const { return bit_depth_; }
    const PfaPattern& pattern() const { return pattern_; }

    Channel channel_at(int i, int j) const { return pattern_.at(i, j); }

private:
    Plane data_;
    int bit_depth_;
    PfaPattern pattern_;
};

/// Sample with the whole-sample mirror border. Valid for i in [-2, height+1]
/// and j in [-2, width+1]; anything farther out throws std::domain_error.
/// The mirror moves indices by even offsets, so the reflected pixel always
/// belongs to the same polarization channel as the requested one.
double padded_sample(const MosaicImage& img, int i, int j);

/// Binary indicator of one channel's sample positions. grid is 1.0 exactly
/// where the mosaic pixel belongs to `angle`, 0.0 elsewhere; the four masks
/// partition the pixel grid and are periodic with period 2 in both axes.
struct ChannelMask {
    Channel angle;
    Plane grid;
};

std::array<ChannelMask, 4> make_masks(const PfaPattern& pattern, int width, int height);

/// Four full-resolution channel planes (demosaicked output or ground truth).
class ChannelStack {
public:
    ChannelStack() = default;
    ChannelStack(int width, int height, double fill = 0.0);
    /// Planes ordered I0, I45, I90, I135; all four must share dimensions.
    explicit ChannelStack(std::array<Plane, 4> planes);

    Plane& plane(Channel c) { return planes_[channel_index(c)]; }
    const Plane& plane(Channel c) const { return planes_[channel_index(c)]; }

    int width() const { return planes_[0].width(); }
    int height() const { return planes_[0].height(); }

    friend bool operator==(const ChannelStack&, const ChannelStack&) = default;

private:
    std::array<Plane, 4> planes_;
};

}  // namespace dofp
