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

#include "dofp/dle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dofp/parallel.hpp"

namespace dofp {
namespace {

const double kTwoSqrt2 = 2.0 * std::sqrt(2.0);
const double kInvTwoSqrt2 = 1.0 / kTwoSqrt2;

struct MirrorSampler {
    const Plane& p;
    double operator()(int i, int j) const {
        return p.at(mirror_index(i, p.height()), mirror_index(j, p.width()));
    }
};

struct DirectSampler {
    const Plane& p;
    double operator()(int i, int j) const { return p.at(i, j); }
};

// Weight of the primary direction given the variation pair. Both rules give
// more weight to the direction with less variation; the ternary classifier's
// own orientation is increasing, hence the sign flip.
double direction_weight(double v_primary, double v_other, double k,
                        const EdgeWeightParams& params) {
    if (params.rule == DecisionRule::ternary)
        return ternary_weight(v_other - v_primary, params.ternary_threshold);
    return logistic_weight(v_primary - v_other, k);
}

template <class Sampler>
DiagonalVariation diagonal_variations_at(const Sampler& s, int i, int j) {
    const double center = s(i, j);
    const double grad_d = (s(i + 1, j + 1) - s(i - 1, j - 1)) * kInvTwoSqrt2;
    const double curv_d = (s(i + 2, j + 2) + s(i - 2, j - 2) - 2.0 * center) * 0.125;
    const double grad_a = (s(i - 1, j + 1) - s(i + 1, j - 1)) * kInvTwoSqrt2;
    const double curv_a = (s(i - 2, j + 2) + s(i + 2, j - 2) - 2.0 * center) * 0.125;
    return {std::abs(grad_d) + std::abs(kTwoSqrt2 * curv_d),
            std::abs(grad_a) + std::abs(kTwoSqrt2 * curv_a)};
}

template <class Sampler>
double orthogonal_estimate_at(const Sampler& s, int i, int j, double k,
                              const EdgeWeightParams& params) {
    const double center = s(i, j);
    const double dpp = s(i + 1, j + 1), dmm = s(i - 1, j - 1);
    const double apm = s(i + 1, j - 1), amp = s(i - 1, j + 1);
    const double curv_d = (s(i + 2, j + 2) + s(i - 2, j - 2) - 2.0 * center) * 0.125;
    const double curv_a = (s(i - 2, j + 2) + s(i + 2, j - 2) - 2.0 * center) * 0.125;
    const double grad_d = (dpp - dmm) * kInvTwoSqrt2;
    const double grad_a = (amp - apm) * kInvTwoSqrt2;
    const double v_d = std::abs(grad_d) + std::abs(kTwoSqrt2 * curv_d);
    const double v_a = std::abs(grad_a) + std::abs(kTwoSqrt2 * curv_a);
    const double w_d = direction_weight(v_d, v_a, k, params);
    const double mean_d = 0.5 * (dpp + dmm);
    const double mean_a = 0.5 * (apm + amp);
    return w_d * (mean_d - curv_d) + (1.0 - w_d) * (mean_a - curv_a);
}

// Stage-2 estimate at one pixel. mos is the mosaic, orth the stage-1 plane,
// diff their difference. The result plane for the horizontal-neighbor channel
// mixes a horizontal mosaic mean with a vertical orthogonal-plane mean (the
// vertical neighbors' orthogonal channel is exactly the horizontal one); the
// vertical-neighbor channel mirrors that.
template <class Sampler>
void neighbor_estimates_at(const Sampler& mos, const Sampler& orth, const Sampler& diff, int i,
                           int j, double k, const EdgeWeightParams& params, double& out_h,
                           double& out_v) {
    const double dc = diff(i, j);
    const double grad_h = (diff(i, j + 1) - diff(i, j - 1)) * 0.5;
    const double curv_h = (diff(i, j + 2) + diff(i, j - 2) - 2.0 * dc) * 0.25;
    const double grad_v = (diff(i + 1, j) - diff(i - 1, j)) * 0.5;
    const double curv_v = (diff(i + 2, j) + diff(i - 2, j) - 2.0 * dc) * 0.25;
    const double v_h = std::abs(grad_h) + std::abs(2.0 * curv_h);
    const double v_v = std::abs(grad_v) + std::abs(2.0 * curv_v);
    const double w_h = direction_weight(v_h, v_v, k, params);
    const double w_v = 1.0 - w_h;

    const double mc = mos(i, j);
    const double mosaic_curv_h = (mos(i, j + 2) + mos(i, j - 2) - 2.0 * mc) * 0.25;
    const double mosaic_curv_v = (mos(i + 2, j) + mos(i - 2, j) - 2.0 * mc) * 0.25;
    const double mean_hh = 0.5 * (mos(i, j + 1) + mos(i, j - 1));
    const double mean_hv = 0.5 * (orth(i + 1, j) + orth(i - 1, j));
    const double mean_vh = 0.5 * (orth(i, j + 1) + orth(i, j - 1));
    const double mean_vv = 0.5 * (mos(i + 1, j) + mos(i - 1, j));

    out_h = w_h * (mean_hh - mosaic_curv_h) + w_v * (mean_hv - mosaic_curv_v);
    out_v = w_h * (mean_vh - mosaic_curv_h) + w_v * (mean_vv - mosaic_curv_v);
}

}  // namespace

double dynamic_range(const MosaicImage& img) {
    auto [lo, hi] = std::minmax_element(img.data().samples().begin(), img.data().samples().end());
    return *hi - *lo;
}

double edge_steepness(const MosaicImage& img, const EdgeWeightParams& params) {
    const double range = params.range_mode == RangeMode::bit_depth
                             ? static_cast<double>((1 << img.bit_depth()) - 1)
                             : dynamic_range(img);
    return params.k0 * range / 255.0;
}

double logistic_weight(double delta_v, double k) {
    // exp would overflow past ~709; by then the weight is saturated anyway.
    const double t = std::clamp(k * delta_v, -700.0, 700.0);
    return 1.0 / (1.0 + std::exp(t));
}

double ternary_weight(double delta_v, double threshold) {
    if (delta_v < -threshold) return 0.0;
    if (delta_v > threshold) return 1.0;
    return 0.5;
}

DiagonalVariation diagonal_variations(const MosaicImage& img, int i, int j) {
    return diagonal_variations_at(MirrorSampler{img.data()}, i, j);
}

Plane estimate_orthogonal_plane(const MosaicImage& img, const EdgeWeightParams& params,
                                int threads) {
    const int w = img.width(), h = img.height();
    const double k = edge_steepness(img, params);
    Plane out(w, h);
    const MirrorSampler mirror{img.data()};
    const DirectSampler direct{img.data()};
    parallel_rows(h, threads, [&](int r0, int r1) {
        for (int i = r0; i < r1; ++i) {
            double* dst = out.row(i);
            if (i < 2 || i >= h - 2) {
                for (int j = 0; j < w; ++j)
                    dst[j] = orthogonal_estimate_at(mirror, i, j, k, params);
                continue;
            }
            for (int j = 0; j < 2; ++j) dst[j] = orthogonal_estimate_at(mirror, i, j, k, params);
            for (int j = 2; j < w - 2; ++j)
                dst[j] = orthogonal_estimate_at(direct, i, j, k, params);
            for (int j = w - 2; j < w; ++j)
                dst[j] = orthogonal_estimate_at(mirror, i, j, k, params);
        }
    });
    return out;
}

Plane orthogonal_difference(const MosaicImage& img, const Plane& orthogonal) {
    if (!img.data().same_size(orthogonal))
        throw std::invalid_argument("orthogonal plane dimensions do not match the mosaic");
    Plane out(img.width(), img.height());
    auto m = img.data().samples();
    auto o = orthogonal.samples();
    auto d = out.samples();
    for (std::size_t n = 0; n < d.size(); ++n) d[n] = m[n] - o[n];
    return out;
}

AxisVariation axis_variations(const Plane& difference, int i, int j) {
    const MirrorSampler s{difference};
    const double center = s(i, j);
    const double grad_h = (s(i, j + 1) - s(i, j - 1)) * 0.5;
    const double curv_h = (s(i, j + 2) + s(i, j - 2) - 2.0 * center) * 0.25;
    const double grad_v = (s(i + 1, j) - s(i - 1, j)) * 0.5;
    const double curv_v = (s(i + 2, j) + s(i - 2, j) - 2.0 * center) * 0.25;
    return {std::abs(grad_h) + std::abs(2.0 * curv_h), std::abs(grad_v) + std::abs(2.0 * curv_v)};
}

NeighborPlanes estimate_neighbor_planes(const MosaicImage& img, const Plane& orthogonal,
                                        const EdgeWeightParams& params, int threads) {
    const int w = img.width(), h = img.height();
    const double k = edge_steepness(img, params);
    const Plane diff = orthogonal_difference(img, orthogonal);
    NeighborPlanes out{Plane(w, h), Plane(w, h)};
    const MirrorSampler mos_m{img.data()}, orth_m{orthogonal}, diff_m{diff};
    const DirectSampler mos_d{img.data()}, orth_d{orthogonal}, diff_d{diff};
    parallel_rows(h, threads, [&](int r0, int r1) {
        for (int i = r0; i < r1; ++i) {
            double* dst_h = out.horizontal.row(i);
            double* dst_v = out.vertical.row(i);
            if (i < 2 || i >= h - 2) {
                for (int j = 0; j < w; ++j)
                    neighbor_estimates_at(mos_m, orth_m, diff_m, i, j, k, params, dst_h[j],
                                          dst_v[j]);
                continue;
            }
            for (int j = 0; j < 2; ++j)
                neighbor_estimates_at(mos_m, orth_m, diff_m, i, j, k, params, dst_h[j], dst_v[j]);
            for (int j = 2; j < w - 2; ++j)
                neighbor_estimates_at(mos_d, orth_d, diff_d, i, j, k, params, dst_h[j], dst_v[j]);
            for (int j = w - 2; j < w; ++j)
                neighbor_estimates_at(mos_m, orth_m, diff_m, i, j, k, params, dst_h[j], dst_v[j]);
        }
    });
    return out;
}

}  // namespace dofp
