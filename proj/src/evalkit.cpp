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

#include "dofp/evalkit.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "dofp/stokes.hpp"

namespace dofp {

namespace {

constexpr double kPi = 3.14159265358979323846;

void require_comparable(const Plane& a, const Plane& b, const char* what) {
    if (!a.same_size(b)) {
        throw std::invalid_argument(std::string(what) + ": plane dimensions differ");
    }
    if (a.empty()) {
        throw std::invalid_argument(std::string(what) + ": empty plane");
    }
}

double mean_squared_error(const Plane& ref, const Plane& test) {
    double acc = 0.0;
    const auto r = ref.samples();
    const auto t = test.samples();
    for (std::size_t k = 0; k < r.size(); ++k) {
        const double d = r[k] - t[k];
        acc += d * d;
    }
    return acc / static_cast<double>(r.size());
}

// Angle error plane for wrap-aware AoLP metrics. Both inputs live in
// (-pi/2, pi/2], so |a - b| < pi and min(|d|, pi - |d|) is the distance on
// the half-turn circle.
Plane wrapped_error(const Plane& a, const Plane& b) {
    Plane e(a.width(), a.height());
    for (std::size_t k = 0; k < e.size(); ++k) {
        const double d = std::fabs(a.samples()[k] - b.samples()[k]);
        e.samples()[k] = std::min(d, kPi - d);
    }
    return e;
}

constexpr int kSsimWindow = 11;

std::array<double, kSsimWindow> ssim_kernel() {
    std::array<double, kSsimWindow> w{};
    const double sigma = 1.5;
    double sum = 0.0;
    for (int k = 0; k < kSsimWindow; ++k) {
        const double d = k - (kSsimWindow - 1) / 2.0;
        w[k] = std::exp(-(d * d) / (2.0 * sigma * sigma));
        sum += w[k];
    }
    for (double& x : w) x /= sum;
    return w;
}

// Separable Gaussian, valid region only (output shrinks by window-1).
Plane gauss_valid(const Plane& src, const std::array<double, kSsimWindow>& w) {
    const int wo = src.width() - (kSsimWindow - 1);
    const int ho = src.height() - (kSsimWindow - 1);
    Plane tmp(wo, src.height());
    for (int i = 0; i < src.height(); ++i) {
        const double* in = src.row(i);
        double* out = tmp.row(i);
        for (int j = 0; j < wo; ++j) {
            double acc = 0.0;
            for (int k = 0; k < kSsimWindow; ++k) acc += w[k] * in[j + k];
            out[j] = acc;
        }
    }
    Plane out(wo, ho);
    for (int i = 0; i < ho; ++i) {
        double* dst = out.row(i);
        for (int j = 0; j < wo; ++j) {
            double acc = 0.0;
            for (int k = 0; k < kSsimWindow; ++k) acc += w[k] * tmp.at(i + k, j);
            dst[j] = acc;
        }
    }
    return out;
}

std::string fmt_fixed(double v, int digits) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(digits) << v;
    return os.str();
}

std::string fmt_psnr(double v) {
    return std::isinf(v) ? std::string("identical") : fmt_fixed(v, 4);
}

}  // namespace

MosaicImage mosaic_from_stack(const ChannelStack& stack, const PfaPattern& pattern,
                              int bit_depth) {
    Plane m(stack.width(), stack.height());
    for (int i = 0; i < m.height(); ++i) {
        const double* even = stack.plane(pattern.at(i, 0)).row(i);
        const double* odd = stack.plane(pattern.at(i, 1)).row(i);
        double* dst = m.row(i);
        for (int j = 0; j < m.width(); j += 2) dst[j] = even[j];
        for (int j = 1; j < m.width(); j += 2) dst[j] = odd[j];
    }
    // The MosaicImage constructor enforces even dimensions >= 6 and sample
    // validity, so odd or undersized stacks are rejected here.
    return MosaicImage(std::move(m), bit_depth, pattern);
}

double psnr(const Plane& ref, const Plane& test, double peak) {
    require_comparable(ref, test, "psnr");
    if (!(peak > 0.0)) throw std::invalid_argument("psnr: peak must be positive");
    const double mse = mean_squared_error(ref, test);
    if (mse == 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(peak * peak / mse);
}

double rmse(const Plane& ref, const Plane& test) {
    require_comparable(ref, test, "rmse");
    return std::sqrt(mean_squared_error(ref, test));
}

double rmse_masked(const Plane& ref, const Plane& test, const Plane& mask) {
    require_comparable(ref, test, "rmse_masked");
    require_comparable(ref, mask, "rmse_masked");
    double acc = 0.0;
    long long n = 0;
    for (std::size_t k = 0; k < ref.size(); ++k) {
        if (mask.samples()[k] == 0.0) continue;
        const double d = ref.samples()[k] - test.samples()[k];
        acc += d * d;
        ++n;
    }
    if (n == 0) throw std::invalid_argument("rmse_masked: mask selects no pixels");
    return std::sqrt(acc / static_cast<double>(n));
}

double ssim(const Plane& ref, const Plane& test, double dynamic_range) {
    require_comparable(ref, test, "ssim");
    if (ref.width() < kSsimWindow || ref.height() < kSsimWindow) {
        throw std::invalid_argument("ssim: image smaller than the 11x11 window");
    }
    if (!(dynamic_range > 0.0)) {
        throw std::invalid_argument("ssim: dynamic range must be positive");
    }

    const auto w = ssim_kernel();
    Plane xx(ref.width(), ref.height());
    Plane yy(ref.width(), ref.height());
    Plane xy(ref.width(), ref.height());
    for (std::size_t k = 0; k < ref.size(); ++k) {
        const double x = ref.samples()[k];
        const double y = test.samples()[k];
        xx.samples()[k] = x * x;
        yy.samples()[k] = y * y;
        xy.samples()[k] = x * y;
    }
    const Plane mu1 = gauss_valid(ref, w);
    const Plane mu2 = gauss_valid(test, w);
    const Plane gxx = gauss_valid(xx, w);
    const Plane gyy = gauss_valid(yy, w);
    const Plane gxy = gauss_valid(xy, w);

    const double c1 = 0.01 * 0.01 * dynamic_range * dynamic_range;
    const double c2 = 0.03 * 0.03 * dynamic_range * dynamic_range;
    double acc = 0.0;
    for (std::size_t k = 0; k < mu1.size(); ++k) {
        const double m1 = mu1.samples()[k];
        const double m2 = mu2.samples()[k];
        const double var1 = gxx.samples()[k] - m1 * m1;
        const double var2 = gyy.samples()[k] - m2 * m2;
        const double cov = gxy.samples()[k] - m1 * m2;
        const double num = (2.0 * m1 * m2 + c1) * (2.0 * cov + c2);
        const double den = (m1 * m1 + m2 * m2 + c1) * (var1 + var2 + c2);
        acc += num / den;
    }
    return acc / static_cast<double>(mu1.size());
}

const char* quantity_name(Quantity q) {
    switch (q) {
        case Quantity::i0: return "I0";
        case Quantity::i45: return "I45";
        case Quantity::i90: return "I90";
        case Quantity::i135: return "I135";
        case Quantity::s0: return "S0";
        case Quantity::dolp: return "DoLP";
        case Quantity::aolp: return "AoLP";
    }
    return "?";
}

const MetricRow& EvalReport::row(Quantity q) const {
    for (const MetricRow& r : rows) {
        if (r.quantity == q) return r;
    }
    throw std::out_of_range("EvalReport: quantity not present");
}

std::string EvalReport::to_text() const {
    std::ostringstream os;
    if (!timing.method.empty()) {
        os << "method=" << timing.method << "\n";
        os << "threads=" << timing.threads << "\n";
        os << "image=" << timing.width << "x" << timing.height << "\n";
        os << "seconds=" << fmt_fixed(timing.seconds, 6) << "\n";
    }
    for (const MetricRow& r : rows) {
        const char* name = quantity_name(r.quantity);
        os << name << ".psnr=" << fmt_psnr(r.psnr) << "\n";
        os << name << ".rmse=" << fmt_fixed(r.rmse, 6) << "\n";
        os << name << ".ssim=" << fmt_fixed(r.ssim, 6) << "\n";
    }
    return os.str();
}

std::string EvalReport::to_csv() const {
    std::ostringstream os;
    os << "quantity,psnr,rmse,ssim\n";
    for (const MetricRow& r : rows) {
        os << quantity_name(r.quantity) << ',' << fmt_psnr(r.psnr) << ','
           << fmt_fixed(r.rmse, 6) << ',' << fmt_fixed(r.ssim, 6) << "\n";
    }
    return os.str();
}

EvalReport evaluate(const ChannelStack& gt, const ChannelStack& out,
                    const EvalConfig& config) {
    if (gt.width() != out.width() || gt.height() != out.height()) {
        throw std::invalid_argument("evaluate: stack dimensions differ");
    }
    if (config.bit_depth < 1 || config.bit_depth > 16) {
        throw std::invalid_argument("evaluate: bit depth must be in [1, 16]");
    }

    const double scale = 255.0 / ((1 << config.bit_depth) - 1);
    const auto scaled = [scale](const Plane& p) {
        Plane q = p;
        for (double& v : q.samples()) v *= scale;
        return q;
    };
    const auto measure = [](const Plane& a, const Plane& b, double peak, Quantity q) {
        MetricRow row;
        row.quantity = q;
        row.psnr = psnr(a, b, peak);
        row.rmse = rmse(a, b);
        row.ssim = ssim(a, b, peak);
        return row;
    };

    EvalReport report;
    for (Channel c : kAllChannels) {
        // Quantity and Channel share the 0/45/90/135 ordering.
        report.rows.push_back(measure(scaled(gt.plane(c)), scaled(out.plane(c)),
                                      255.0, static_cast<Quantity>(channel_index(c))));
    }

    const StokesImage st_gt = stokes_from_stack(gt);
    const StokesImage st_out = stokes_from_stack(out);
    report.rows.push_back(
        measure(scaled(st_gt.s0), scaled(st_out.s0), 255.0, Quantity::s0));

    const PolarizationView v_gt = dolp_aolp(st_gt, config.dolp_eps);
    const PolarizationView v_out = dolp_aolp(st_out, config.dolp_eps);
    report.rows.push_back(measure(v_gt.dolp, v_out.dolp, 1.0, Quantity::dolp));

    MetricRow aolp_row;
    aolp_row.quantity = Quantity::aolp;
    if (config.aolp_wrap) {
        const Plane err = wrapped_error(v_gt.aolp, v_out.aolp);
        const Plane zero(err.width(), err.height());
        aolp_row.psnr = psnr(err, zero, kPi / 2.0);
        aolp_row.rmse = rmse(err, zero);
    } else {
        aolp_row.psnr = psnr(v_gt.aolp, v_out.aolp, kPi / 2.0);
        aolp_row.rmse = rmse(v_gt.aolp, v_out.aolp);
    }
    // Structural similarity is taken on the raw angle planes either way; a
    // wrap-aware SSIM has no standard definition.
    aolp_row.ssim = ssim(v_gt.aolp, v_out.aolp, kPi / 2.0);
    report.rows.push_back(aolp_row);

    return report;
}

double bench(const MosaicImage& img, const MethodSpec& spec, int repetitions,
             int threads) {
    if (repetitions < 3) {
        throw std::invalid_argument("bench: need at least 3 repetitions");
    }
    demosaic(img, spec, threads);  // warmup, untimed

    std::vector<double> t(static_cast<std::size_t>(repetitions));
    for (int r = 0; r < repetitions; ++r) {
        const auto start = std::chrono::steady_clock::now();
        const ChannelStack out = demosaic(img, spec, threads);
        const auto stop = std::chrono::steady_clock::now();
        t[static_cast<std::size_t>(r)] = std::chrono::duration<double>(stop - start).count();
        volatile double sink = out.plane(Channel::deg0).at(0, 0);  // defeat elision
        (void)sink;
    }
    std::sort(t.begin(), t.end());
    const std::size_t mid = t.size() / 2;
    return (t.size() % 2 == 1) ? t[mid] : 0.5 * (t[mid - 1] + t[mid]);
}

}  // namespace dofp
