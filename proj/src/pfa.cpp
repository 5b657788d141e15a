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

#include "dofp/pfa.hpp"

#include <cmath>
#include <charconv>
#include <stdexcept>

namespace dofp {

const char* channel_name(Channel c) {
    switch (c) {
        case Channel::deg0: return "I0";
        case Channel::deg45: return "I45";
        case Channel::deg90: return "I90";
        case Channel::deg135: return "I135";
    }
    throw std::invalid_argument("channel_name: invalid channel");
}

Channel channel_from_degrees(int degrees) {
    switch (degrees) {
        case 0: return Channel::deg0;
        case 45: return Channel::deg45;
        case 90: return Channel::deg90;
        case 135: return Channel::deg135;
        default:
            throw std::invalid_argument("polarizer angle must be 0, 45, 90 or 135, got " +
                                        std::to_string(degrees));
    }
}

PfaPattern PfaPattern::from_tile(const std::array<std::array<Channel, 2>, 2>& tile) {
    std::array<int, 4> seen = {0, 0, 0, 0};
    for (const auto& row : tile)
        for (Channel c : row) seen[channel_index(c)]++;
    for (int n : seen)
        if (n != 1)
            throw std::invalid_argument("PFA tile must contain each of 0/45/90/135 exactly once");
    // Diagonal neighbors must carry the orthogonal channel; with four distinct
    // entries this pins the whole neighbor structure the stencils assume.
    if (tile[0][0] != orthogonal(tile[1][1]) || tile[0][1] != orthogonal(tile[1][0]))
        throw std::invalid_argument(
            "PFA tile must place orthogonal channel pairs on its diagonals");
    return PfaPattern(tile);
}

PfaPattern PfaPattern::parse(std::string_view text) {
    std::array<std::array<Channel, 2>, 2> tile;
    int row = 0;
    std::size_t pos = 0;
    while (true) {
        std::size_t end = text.find(';', pos);
        std::string_view row_text = text.substr(pos, end == std::string_view::npos
                                                         ? std::string_view::npos
                                                         : end - pos);
        if (row >= 2) throw std::invalid_argument("PFA pattern must have exactly 2 rows");
        int col = 0;
        std::size_t rpos = 0;
        while (true) {
            std::size_t rend = row_text.find(',', rpos);
            std::string_view cell = row_text.substr(
                rpos, rend == std::string_view::npos ? std::string_view::npos : rend - rpos);
            if (col >= 2) throw std::invalid_argument("PFA pattern must have exactly 2 columns");
            int degrees = 0;
            auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), degrees);
            if (ec != std::errc{} || ptr != cell.data() + cell.size())
                throw std::invalid_argument("bad PFA pattern cell '" + std::string(cell) + "'");
            tile[row][col] = channel_from_degrees(degrees);
            ++col;
            if (rend == std::string_view::npos) break;
            rpos = rend + 1;
        }
        if (col != 2) throw std::invalid_argument("PFA pattern must have exactly 2 columns");
        ++row;
        if (end == std::string_view::npos) break;
        pos = end + 1;
    }
    if (row != 2) throw std::invalid_argument("PFA pattern must have exactly 2 rows");
    return from_tile(tile);
}

PfaPattern PfaPattern::standard() {
    return from_tile({{{Channel::deg90, Channel::deg45}, {Channel::deg135, Channel::deg0}}});
}

PfaPattern PfaPattern::shifted(int di, int dj) const {
    std::array<std::array<Channel, 2>, 2> tile;
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) tile[r][c] = at(r + di, c + dj);
    return from_tile(tile);
}

PfaPattern::Phase PfaPattern::phase_of(Channel c) const {
    for (int r = 0; r < 2; ++r)
        for (int col = 0; col < 2; ++col)
            if (tile_[r][col] == c) return {r, col};
    throw std::logic_error("PfaPattern: channel missing from validated tile");
}

std::string PfaPattern::to_string() const {
    std::string s;
    for (int r = 0; r < 2; ++r) {
        if (r) s += ';';
        for (int c = 0; c < 2; ++c) {
            if (c) s += ',';
            s += std::to_string(channel_degrees(tile_[r][c]));
        }
    }
    return s;
}

MosaicImage::MosaicImage(Plane data, int bit_depth, PfaPattern pattern)
    : data_(std::move(data)), bit_depth_(bit_depth), pattern_(pattern) {
    if (data_.width() < 6 || data_.height() < 6)
        throw std::invalid_argument("mosaic must be at least 6x6");
    if (data_.width() % 2 != 0 || data_.height() % 2 != 0)
        throw std::invalid_argument("mosaic dimensions must be even");
    if (bit_depth_ < 1 || bit_depth_ > 16)
        throw std::invalid_argument("mosaic bit depth must be in [1, 16]");
    for (double v : data_.samples())
        if (!std::isfinite(v) || v < 0.0)
            throw std::invalid_argument("mosaic samples must be finite and nonnegative");
}

double padded_sample(const MosaicImage& img, int i, int j) {
    if (i < -2 || i > img.height() + 1 || j < -2 || j > img.width() + 1)
        throw std::domain_error("padded_sample: index outside the 2-pixel apron");
    return img.data().at(mirror_index(i, img.height()), mirror_index(j, img.width()));
}

std::array<ChannelMask, 4> make_masks(const PfaPattern& pattern, int width, int height) {
    std::array<ChannelMask, 4> masks;
    for (Channel c : kAllChannels)
        masks[channel_index(c)] = ChannelMask{c, Plane(width, height, 0.0)};
    for (int i = 0; i < height; ++i)
        for (int j = 0; j < width; ++j)
            masks[channel_index(pattern.at(i, j))].grid.at(i, j) = 1.0;
    return masks;
}

ChannelStack::ChannelStack(int width, int height, double fill)
    : planes_{Plane(width, height, fill), Plane(width, height, fill), Plane(width, height, fill),
              Plane(width, height, fill)} {}

ChannelStack::ChannelStack(std::array<Plane, 4> planes) : planes_(std::move(planes)) {
    for (int k = 1; k < 4; ++k)
        if (!planes_[k].same_size(planes_[0]))
            throw std::invalid_argument("channel stack planes must share dimensions");
}

}  // namespace dofp
