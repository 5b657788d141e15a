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

#include "dofp/demosaic.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace dofp {
namespace {

// Nearest lattice coordinate with phase parity; equidistant ties go to the
// smaller index. Off-image candidates (only possible at index 0) fall back
// to the in-bounds side.
inline int nearest_lattice(int i, int phase) {
    if ((i & 1) == phase) return i;
    if (i - 1 >= 0) return i - 1;
    return i + 1;
}

inline double catmull_rom_mid(double p0, double p1, double p2, double p3) {
    return (-p0 + 9.0 * p1 + 9.0 * p2 - p3) * (1.0 / 16.0);
}

Plane nearest_fill(const Plane& sparse, int row_phase, int col_phase) {
    const int w = sparse.width(), h = sparse.height();
    Plane out(w, h);
    for (int i = 0; i < h; ++i) {
        const double* src = sparse.row(nearest_lattice(i, row_phase));
        double* dst = out.row(i);
        for (int j = 0; j < w; ++j) dst[j] = src[nearest_lattice(j, col_phase)];
    }
    return out;
}

Plane bicubic_fill(const Plane& sparse, int row_phase, int col_phase) {
    const int w = sparse.width(), h = sparse.height();
    // Pass 1: complete every lattice row along the column axis.
    Plane rows = sparse;
    for (int i = row_phase; i < h; i += 2) {
        const double* src = sparse.row(i);
        double* dst = rows.row(i);
        for (int j = 1 - col_phase; j < w; j += 2) {
            const double p0 = src[mirror_index(j - 3, w)];
            const double p1 = src[mirror_index(j - 1, w)];
            const double p2 = src[mirror_index(j + 1, w)];
            const double p3 = src[mirror_index(j + 3, w)];
            dst[j] = catmull_rom_mid(p0, p1, p2, p3);
        }
    }
    // Pass 2: fill the remaining rows from the completed lattice rows.
    Plane out = rows;
    for (int i = 1 - row_phase; i < h; i += 2) {
        const double* r0 = rows.row(mirror_index(i - 3, h));
        const double* r1 = rows.row(mirror_index(i - 1, h));
        const double* r2 = rows.row(mirror_index(i + 1, h));
        const double* r3 = rows.row(mirror_index(i + 3, h));
        double* dst = out.row(i);
        for (int j = 0; j < w; ++j) dst[j] = catmull_rom_mid(r0[j], r1[j], r2[j], r3[j]);
    }
    return out;
}

ChannelStack baseline_demosaic(const MosaicImage& img, Method method) {
    const int w = img.width(), h = img.height();
    std::array<Plane, 4> planes;
    for (Channel c : kAllChannels) {
        const auto phase = img.pattern().phase_of(c);
        Plane sparse(w, h, 0.0);
        for (int i = phase.row; i < h; i += 2) {
            const double* m = img.data().row(i);
            double* s = sparse.row(i);
            for (int j = phase.col; j < w; j += 2) s[j] = m[j];
        }
        planes[channel_index(c)] = baseline_interpolate(sparse, phase.row, phase.col, method);
    }
    return ChannelStack(std::move(planes));
}

}  // namespace

Method method_from_string(std::string_view name) {
    std::string s(name);
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (s == "lepd") return Method::lepd;
    if (s == "leic") return Method::leic;
    if (s == "nn" || s == "nearest") return Method::nearest;
    if (s == "bi" || s == "bilinear") return Method::bilinear;
    if (s == "bcb" || s == "bicubic") return Method::bicubic;
    throw std::invalid_argument("unknown method '" + std::string(name) +
                                "' (expected lepd, leic, nn, bi or bcb)");
}

std::string_view method_name(Method m) {
    switch (m) {
        case Method::lepd: return "lepd";
        case Method::leic: return "leic";
        case Method::nearest: return "nn";
        case Method::bilinear: return "bi";
        case Method::bicubic: return "bcb";
    }
    throw std::invalid_argument("method_name: invalid method");
}

ChannelStack assemble_stack(const MosaicImage& img, const Plane& orthogonal,
                            const NeighborPlanes& neighbors) {
    if (!img.data().same_size(orthogonal) || !img.data().same_size(neighbors.horizontal) ||
        !img.data().same_size(neighbors.vertical))
        throw std::invalid_argument("assemble_stack: plane dimensions do not match the mosaic");
    const int w = img.width(), h = img.height();
    ChannelStack stack(w, h);
    const auto& tile = img.pattern().tile();
    for (int i = 0; i < h; ++i) {
        const int r = i & 1;
        const double* mos = img.data().row(i);
        const double* ort = orthogonal.row(i);
        const double* hor = neighbors.horizontal.row(i);
        const double* ver = neighbors.vertical.row(i);
        // For column parity c the four destinations are fixed by the tile.
        double* own_dst[2];
        double* orth_dst[2];
        double* h_dst[2];
        double* v_dst[2];
        for (int c = 0; c < 2; ++c) {
            own_dst[c] = stack.plane(tile[r][c]).row(i);
            orth_dst[c] = stack.plane(tile[r ^ 1][c ^ 1]).row(i);
            h_dst[c] = stack.plane(tile[r][c ^ 1]).row(i);
            v_dst[c] = stack.plane(tile[r ^ 1][c]).row(i);
        }
        for (int j = 0; j < w; ++j) {
            const int c = j & 1;
            own_dst[c][j] = mos[j];
            orth_dst[c][j] = ort[j];
            h_dst[c][j] = hor[j];
            v_dst[c][j] = ver[j];
        }
    }
    return stack;
}

ChannelStack demosaic(const MosaicImage& img, const MethodSpec& spec, int threads) {
    switch (spec.method) {
        case Method::lepd:
        case Method::leic: {
            const Plane orth = estimate_orthogonal_plane(img, spec.edge, threads);
            const NeighborPlanes nb = estimate_neighbor_planes(img, orth, spec.edge, threads);
            ChannelStack stack = assemble_stack(img, orth, nb);
            if (spec.method == Method::lepd) return stack;
            // All four calibrations read the same pre-calibration stack.
            std::array<Plane, 4> calibrated;
            for (Channel c : kAllChannels)
                calibrated[channel_index(c)] = calibrate_channel(c, stack, img, spec.weights);
            return ChannelStack(std::move(calibrated));
        }
        case Method::nearest:
        case Method::bilinear:
        case Method::bicubic:
            return baseline_demosaic(img, spec.method);
    }
    throw std::invalid_argument("demosaic: invalid method");
}

Plane baseline_interpolate(const Plane& sparse, int row_phase, int col_phase, Method method) {
    if (row_phase < 0 || row_phase > 1 || col_phase < 0 || col_phase > 1)
        throw std::invalid_argument("baseline_interpolate: phases must be 0 or 1");
    switch (method) {
        case Method::nearest: return nearest_fill(sparse, row_phase, col_phase);
        case Method::bilinear: return bilinear_fill(sparse);
        case Method::bicubic: return bicubic_fill(sparse, row_phase, col_phase);
        default:
            throw std::invalid_argument("baseline_interpolate: method must be nn, bi or bcb");
    }
}

}  // namespace dofp
