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

#include <string>
#include <vector>

#include "dofp/demosaic.hpp"
#include "dofp/pfa.hpp"
#include "dofp/plane.hpp"

namespace dofp {

/// Resample a ground-truth stack onto the PFA lattice: each mosaic pixel is
/// the stack sample of the channel the pattern places there. This is the
/// simulation half of the mosaic -> demosaic -> compare protocol.
MosaicImage mosaic_from_stack(const ChannelStack& stack, const PfaPattern& pattern,
                              int bit_depth = 8);

/// 10*log10(peak^2 / MSE). Identical planes give +infinity; report writers
/// print that as "identical".
double psnr(const Plane& ref, const Plane& test, double peak);

double rmse(const Plane& ref, const Plane& test);

/// RMSE over pixels where mask is nonzero. Used to assert that estimators
/// keep observed mosaic samples untouched. Throws if the mask selects
/// nothing.
double rmse_masked(const Plane& ref, const Plane& test, const Plane& mask);

/// Mean structural similarity with the usual 11x11 Gaussian window
/// (sigma = 1.5, K1 = 0.01, K2 = 0.03, C_i = (K_i * L)^2 with
/// L = dynamic_range). Windows lie fully inside the image; planes must be at
/// least 11x11.
double ssim(const Plane& ref, const Plane& test, double dynamic_range);

enum class Quantity { i0, i45, i90, i135, s0, dolp, aolp };

inline constexpr Quantity kAllQuantities[] = {
    Quantity::i0, Quantity::i45, Quantity::i90, Quantity::i135,
    Quantity::s0, Quantity::dolp, Quantity::aolp};

const char* quantity_name(Quantity q);

struct MetricRow {
    Quantity quantity = Quantity::i0;
    double psnr = 0.0;
    double rmse = 0.0;
    double ssim = 0.0;
};

struct EvalTiming {
    std::string method;  // empty = no timing recorded
    double seconds = 0.0;
    int threads = 1;
    int width = 0;
    int height = 0;
};

struct EvalConfig {
    // Intensities are mapped to a 0-255 scale by 255/(2^bit_depth - 1)
    // before PSNR/RMSE/SSIM, so reports are comparable across bit depths.
    int bit_depth = 8;
    // Raw AoLP difference by default; wrap-aware uses min(|d|, pi - |d|).
    bool aolp_wrap = false;
    double dolp_eps = 1e-12;
};

struct EvalReport {
    std::vector<MetricRow> rows;
    EvalTiming timing;

    const MetricRow& row(Quantity q) const;
    /// key=value lines, one metric per line (I0.psnr=..., DoLP.ssim=...);
    /// timing keys are included when a method label is set.
    std::string to_text() const;
    /// quantity,psnr,rmse,ssim table for spreadsheet import.
    std::string to_csv() const;
};

/// Metrics for all seven quantities. Intensity channels and S0 are compared
/// on the normalized 0-255 scale (peak 255), DoLP on [0,1] (peak 1), AoLP in
/// radians (peak pi/2). Stokes products are derived from both stacks here.
EvalReport evaluate(const ChannelStack& gt, const ChannelStack& out,
                    const EvalConfig& config = {});

/// Median wall-clock seconds over `repetitions` single-image runs, after one
/// untimed warmup. repetitions must be >= 3.
double bench(const MosaicImage& img, const MethodSpec& spec, int repetitions,
             int threads = 1);

}  // namespace dofp
