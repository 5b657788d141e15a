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

#include "dofp/iccc.hpp"

#include <cmath>
#include <stdexcept>

namespace dofp {

GlobalWeights::GlobalWeights(double hv, double orthogonal) : hv_(hv), orthogonal_(orthogonal) {
    if (!(hv > orthogonal) || !(orthogonal > 0.0))
        throw std::invalid_argument("global weights must satisfy hv > orthogonal > 0");
    if (std::abs(2.0 * hv + orthogonal - 1.0) > 1e-12)
        throw std::invalid_argument("global weights must satisfy 2*hv + orthogonal == 1");
}

GlobalWeights GlobalWeights::polarization_distance() {
    const double root2 = std::sqrt(2.0);
    const double denom = 1.0 + 2.0 * root2;
    return GlobalWeights(root2 / denom, 1.0 / denom);
}

Plane sparse_difference(const MosaicImage& img, const Plane& estimate, Channel source,
                        const ChannelMask& target_mask) {
    if (source == target_mask.angle)
        throw std::invalid_argument("sparse_difference: source channel equals target channel");
    if (!img.data().same_size(estimate) || !img.data().same_size(target_mask.grid))
        throw std::invalid_argument("sparse_difference: dimension mismatch");
    const int w = img.width(), h = img.height();
    Plane out(w, h, 0.0);
    for (int i = 0; i < h; ++i) {
        const double* m = img.data().row(i);
        const double* e = estimate.row(i);
        const double* g = target_mask.grid.row(i);
        double* d = out.row(i);
        for (int j = 0; j < w; ++j)
            if (g[j] != 0.0) d[j] = m[j] - e[j];
    }
    return out;
}

Plane bilinear_fill(const Plane& sparse) {
    const int w = sparse.width(), h = sparse.height();
    Plane out(w, h);
    auto tap = [&](int i, int j) {
        return sparse.at(mirror_index(i, h), mirror_index(j, w));
    };
    for (int i = 0; i < h; ++i) {
        const bool row_interior = i >= 1 && i < h - 1;
        for (int j = 0; j < w; ++j) {
            double acc;
            if (row_interior && j >= 1 && j < w - 1) {
                const double* up = sparse.row(i - 1);
                const double* mid = sparse.row(i);
                const double* dn = sparse.row(i + 1);
                acc = up[j - 1] + 2.0 * up[j] + up[j + 1] + 2.0 * mid[j - 1] + 4.0 * mid[j] +
                      2.0 * mid[j + 1] + dn[j - 1] + 2.0 * dn[j] + dn[j + 1];
            } else {
                acc = tap(i - 1, j - 1) + 2.0 * tap(i - 1, j) + tap(i - 1, j + 1) +
                      2.0 * tap(i, j - 1) + 4.0 * tap(i, j) + 2.0 * tap(i, j + 1) +
                      tap(i + 1, j - 1) + 2.0 * tap(i + 1, j) + tap(i + 1, j + 1);
            }
            out.at(i, j) = 0.25 * acc;
        }
    }
    return out;
}

Plane calibrate_channel(Channel target, const ChannelStack& estimates, const MosaicImage& img,
                        const GlobalWeights& weights) {
    if (estimates.width() != img.width() || estimates.height() != img.height())
        throw std::invalid_argument("calibrate_channel: stack does not match the mosaic");
    const int w = img.width(), h = img.height();
    const auto phase = img.pattern().phase_of(target);

    Plane result(w, h, 0.0);
    const Channel orth = orthogonal(target);
    for (Channel source : kAllChannels) {
        if (source == target) continue;
        const Plane& estimate = estimates.plane(source);

        // Difference to the observed target samples, dense via bilinear fill.
        Plane sparse(w, h, 0.0);
        for (int i = phase.row; i < h; i += 2) {
            const double* m = img.data().row(i);
            const double* e = estimate.row(i);
            double* d = sparse.row(i);
            for (int j = phase.col; j < w; j += 2) d[j] = m[j] - e[j];
        }
        const Plane correction = bilinear_fill(sparse);

        const double wt = source == orth ? weights.orthogonal() : weights.hv();
        for (int i = 0; i < h; ++i) {
            const double* e = estimate.row(i);
            const double* c = correction.row(i);
            double* r = result.row(i);
            for (int j = 0; j < w; ++j) r[j] += wt * (e[j] + c[j]);
        }
    }
    return result;
}

}  // namespace dofp
