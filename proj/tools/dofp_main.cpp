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

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dofp/demosaic.hpp"
#include "dofp/evalkit.hpp"
#include "dofp/io.hpp"
#include "dofp/stokes.hpp"

namespace {

using namespace dofp;

// Pattern precedence: explicit flag, then whatever the input file declares,
// then the DOFP_PATTERN environment override, then the standard layout.
PfaPattern resolve_pattern(bool flag_given, const std::string& flag_value,
                           const std::string& sidecar_value) {
    if (flag_given) return PfaPattern::parse(flag_value);
    if (!sidecar_value.empty()) return PfaPattern::parse(sidecar_value);
    if (const char* env = std::getenv("DOFP_PATTERN")) return PfaPattern::parse(env);
    return PfaPattern::standard();
}

std::string fmt_seconds(double s) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(6) << s;
    return os.str();
}

MethodSpec make_spec(const std::string& method, double k0, const std::string& decision) {
    MethodSpec spec;
    spec.method = method_from_string(method);
    spec.edge.k0 = k0;
    if (decision == "logistic") {
        spec.edge.rule = DecisionRule::logistic;
    } else if (decision == "ternary") {
        spec.edge.rule = DecisionRule::ternary;
    } else if (decision.rfind("ternary:", 0) == 0) {
        spec.edge.rule = DecisionRule::ternary;
        std::size_t used = 0;
        const std::string arg = decision.substr(8);
        double t = 0.0;
        try {
            t = std::stod(arg, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != arg.size() || !(t >= 0.0)) {
            throw std::invalid_argument("--decision ternary:T needs a threshold >= 0");
        }
        spec.edge.ternary_threshold = t;
    } else {
        throw std::invalid_argument("--decision must be 'logistic' or 'ternary[:T]'");
    }
    return spec;
}

MosaicImage load_mosaic(const std::string& path, bool pattern_given,
                        const std::string& pattern_flag) {
    RawMeta meta;
    const GrayImage g = load_gray(path, &meta);
    const PfaPattern pattern = resolve_pattern(pattern_given, pattern_flag, meta.pattern);
    return MosaicImage(to_plane(g), g.bit_depth, pattern);
}

void check_plane_format(const std::string& format) {
    if (format != "pgm" && format != "png" && format != "raw") {
        throw std::invalid_argument("--format must be pgm, png, or raw");
    }
}

std::string output_path(const std::string& dir, const std::string& stem,
                        const std::string& suffix, const std::string& ext) {
    return (std::filesystem::path(dir) / (stem + "_" + suffix + "." + ext)).string();
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << text;
    if (!out) throw std::runtime_error("write failed: " + path);
}

void write_channels(const std::string& dir, const std::string& stem,
                    const ChannelStack& stack, int bit_depth, const std::string& format) {
    for (Channel c : kAllChannels) {
        const std::string path = output_path(dir, stem, channel_name(c), format);
        save_gray(path, quantize_plane(stack.plane(c), bit_depth));
        std::cout << "wrote " << path << "\n";
    }
}

void write_stokes_products(const std::string& dir, const std::string& stem,
                           const ChannelStack& stack, int bit_depth,
                           const std::string& format, bool want_s0, bool want_dolp,
                           bool want_aolp) {
    const StokesImage st = stokes_from_stack(stack);
    const PolarizationView view = dolp_aolp(st);
    if (want_s0) {
        // s0 peaks at twice the channel maximum, so give it one extra bit.
        const int s0_depth = std::min(bit_depth + 1, 16);
        const std::string path = output_path(dir, stem, "S0", format);
        save_gray(path, quantize_plane(st.s0, s0_depth));
        std::cout << "wrote " << path << "\n";
    }
    if (want_dolp) {
        const std::string path = output_path(dir, stem, "DoLP", "png");
        save_png_rgb(path, render_pseudocolor(view.dolp, Colormap::parula256));
        std::cout << "wrote " << path << "\n";
    }
    if (want_aolp) {
        const std::string path = output_path(dir, stem, "AoLP", "png");
        save_png_rgb(path, render_pseudocolor(view.aolp, Colormap::hsv_angle));
        std::cout << "wrote " << path << "\n";
    }
}

struct DemosaicArgs {
    std::string input;
    std::string method = "leic";
    double k0 = 1.0;
    std::string decision = "logistic";
    std::string pattern;
    bool pattern_given = false;
    std::string out_dir = ".";
    std::string emit = "channels";
    int threads = 1;
    std::string format = "pgm";
};

int run_demosaic(const DemosaicArgs& a) {
    check_plane_format(a.format);
    const bool emit_channels = a.emit == "channels" || a.emit == "all";
    const bool emit_stokes = a.emit == "stokes" || a.emit == "all";
    const bool emit_dolp = emit_stokes || a.emit == "dolp";
    const bool emit_aolp = emit_stokes || a.emit == "aolp";
    if (!emit_channels && !emit_dolp && !emit_aolp) {
        throw std::invalid_argument("--emit must be channels, stokes, dolp, aolp, or all");
    }

    const MosaicImage img = load_mosaic(a.input, a.pattern_given, a.pattern);
    const MethodSpec spec = make_spec(a.method, a.k0, a.decision);

    const auto start = std::chrono::steady_clock::now();
    const ChannelStack stack = demosaic(img, spec, a.threads);
    const auto stop = std::chrono::steady_clock::now();
    const double seconds = std::chrono::duration<double>(stop - start).count();
    std::cout << "timing: method=" << method_name(spec.method) << " size=" << img.width()
              << "x" << img.height() << " threads=" << a.threads << " seconds="
              << fmt_seconds(seconds) << "\n";

    std::filesystem::create_directories(a.out_dir);
    const std::string stem = std::filesystem::path(a.input).stem().string();
    if (emit_channels) {
        write_channels(a.out_dir, stem, stack, img.bit_depth(), a.format);
    }
    if (emit_dolp || emit_aolp) {
        write_stokes_products(a.out_dir, stem, stack, img.bit_depth(), a.format,
                              emit_stokes, emit_dolp, emit_aolp);
    }
    return 0;
}

struct SimulateArgs {
    std::vector<std::string> inputs;
    std::string out;
    std::string pattern;
    bool pattern_given = false;
};

int run_simulate(const SimulateArgs& a) {
    ChannelStack stack;
    int bit_depth = 8;
    if (a.inputs.size() == 1) {
        stack = load_quad(a.inputs[0], &bit_depth);
    } else if (a.inputs.size() == 4) {
        std::array<Plane, 4> planes;
        for (int p = 0; p < 4; ++p) {
            RawMeta meta;
            const GrayImage g = load_gray(a.inputs[static_cast<std::size_t>(p)], &meta);
            if (p == 0) {
                bit_depth = g.bit_depth;
            } else if (g.bit_depth != bit_depth) {
                throw std::runtime_error("input planes disagree on bit depth");
            }
            planes[static_cast<std::size_t>(p)] = to_plane(g);
        }
        stack = ChannelStack(std::move(planes));  // validates matching sizes
    } else {
        throw std::invalid_argument(
            "simulate needs one .quad container or four plane files (I0 I45 I90 I135)");
    }

    const PfaPattern pattern = resolve_pattern(a.pattern_given, a.pattern, "");
    const MosaicImage mosaic = mosaic_from_stack(stack, pattern, bit_depth);
    save_gray(a.out, quantize_plane(mosaic.data(), bit_depth), pattern.to_string());
    std::cout << "wrote " << a.out << " (" << mosaic.width() << "x" << mosaic.height()
              << ", " << bit_depth << "-bit, pattern " << pattern.to_string() << ")\n";
    return 0;
}

struct StokesArgs {
    std::string input;
    std::string out_dir = ".";
};

int run_stokes(const StokesArgs& a) {
    int bit_depth = 8;
    const ChannelStack stack = load_quad(a.input, &bit_depth);
    std::filesystem::create_directories(a.out_dir);
    const std::string stem = std::filesystem::path(a.input).stem().string();
    write_stokes_products(a.out_dir, stem, stack, bit_depth, "pgm", true, true, true);
    return 0;
}

struct EvalArgs {
    std::string gt;
    std::string test;
    std::string method;
    double k0 = 1.0;
    std::string decision = "logistic";
    std::string pattern;
    bool pattern_given = false;
    int threads = 1;
    bool aolp_wrap = false;
    std::string report;
};

int run_eval(const EvalArgs& a) {
    if (a.test.empty() == a.method.empty()) {
        throw std::invalid_argument("provide exactly one of --test or --method");
    }
    int bit_depth = 8;
    const ChannelStack gt = load_quad(a.gt, &bit_depth);

    EvalConfig config;
    config.bit_depth = bit_depth;
    config.aolp_wrap = a.aolp_wrap;

    ChannelStack test;
    EvalTiming timing;
    if (!a.test.empty()) {
        int test_depth = 8;
        test = load_quad(a.test, &test_depth);
        if (test_depth != bit_depth) {
            throw std::runtime_error("ground truth and test containers disagree on bit depth");
        }
    } else {
        const PfaPattern pattern = resolve_pattern(a.pattern_given, a.pattern, "");
        const MosaicImage mosaic = mosaic_from_stack(gt, pattern, bit_depth);
        const MethodSpec spec = make_spec(a.method, a.k0, a.decision);
        const auto start = std::chrono::steady_clock::now();
        test = demosaic(mosaic, spec, a.threads);
        const auto stop = std::chrono::steady_clock::now();
        timing.method = std::string(method_name(spec.method));
        timing.seconds = std::chrono::duration<double>(stop - start).count();
        timing.threads = a.threads;
        timing.width = mosaic.width();
        timing.height = mosaic.height();
    }

    EvalReport report = evaluate(gt, test, config);
    report.timing = timing;
    std::cout << report.to_text();
    if (!a.report.empty()) {
        write_text(a.report + ".txt", report.to_text());
        write_text(a.report + ".csv", report.to_csv());
        std::cout << "wrote " << a.report << ".txt and " << a.report << ".csv\n";
    }
    return 0;
}

struct BenchArgs {
    std::string input;
    std::string methods = "lepd,leic";
    int reps = 5;
    int threads = 1;
    std::string pattern;
    bool pattern_given = false;
};

int run_bench(const BenchArgs& a) {
    const MosaicImage img = load_mosaic(a.input, a.pattern_given, a.pattern);
    std::vector<std::string> names;
    std::string token;
    for (char c : a.methods) {
        if (c == ',') {
            if (!token.empty()) names.push_back(token);
            token.clear();
        } else {
            token.push_back(c);
        }
    }
    if (!token.empty()) names.push_back(token);
    if (names.empty()) throw std::invalid_argument("--methods is empty");

    for (const std::string& name : names) {
        MethodSpec spec;
        spec.method = method_from_string(name);
        const double seconds = bench(img, spec, a.reps, a.threads);
        std::cout << "method=" << method_name(spec.method) << " size=" << img.width()
                  << "x" << img.height() << " threads=" << a.threads << " reps="
                  << a.reps << " median_seconds=" << fmt_seconds(seconds) << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"DoFP polarization demosaicking toolkit"};
    app.require_subcommand(1);

    DemosaicArgs dm;
    auto* cmd_dm = app.add_subcommand(
        "demosaic", "Reconstruct the four polarization channels from a mosaic");
    cmd_dm->add_option("input", dm.input, "Mosaic image (.pgm/.png/.raw)")->required();
    cmd_dm->add_option("--method", dm.method, "lepd|leic|nn|bi|bcb")
        ->capture_default_str();
    cmd_dm->add_option("--k0", dm.k0, "Logistic steepness at dynamic range 255")
        ->envname("DOFP_K0")
        ->capture_default_str();
    cmd_dm->add_option("--decision", dm.decision, "logistic | ternary[:threshold]")
        ->capture_default_str();
    auto* dm_pat = cmd_dm->add_option("--pattern", dm.pattern,
                                      "PFA tile, e.g. \"90,45;135,0\"");
    cmd_dm->add_option("--out-dir", dm.out_dir, "Output directory")->capture_default_str();
    cmd_dm->add_option("--emit", dm.emit, "channels|stokes|dolp|aolp|all")
        ->capture_default_str();
    cmd_dm->add_option("--threads", dm.threads, "Worker threads")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd_dm->add_option("--format", dm.format, "Channel plane format: pgm|png|raw")
        ->capture_default_str();

    SimulateArgs sim;
    auto* cmd_sim = app.add_subcommand(
        "simulate", "Sample a ground-truth stack down to a DoFP mosaic");
    cmd_sim->add_option("inputs", sim.inputs,
                        "One .quad container or four plane files (I0 I45 I90 I135)")
        ->required()
        ->expected(1, 4);
    cmd_sim->add_option("--out", sim.out, "Output mosaic (.pgm/.png/.raw)")->required();
    auto* sim_pat = cmd_sim->add_option("--pattern", sim.pattern,
                                        "PFA tile, e.g. \"90,45;135,0\"");

    StokesArgs stk;
    auto* cmd_stk = app.add_subcommand(
        "stokes", "Compute S0 plus DoLP/AoLP renders from a channel stack");
    cmd_stk->add_option("input", stk.input, "Channel stack (.quad)")->required();
    cmd_stk->add_option("--out-dir", stk.out_dir, "Output directory")
        ->capture_default_str();

    EvalArgs ev;
    auto* cmd_ev = app.add_subcommand(
        "eval", "Compare a demosaicked stack against ground truth");
    cmd_ev->add_option("--gt", ev.gt, "Ground-truth stack (.quad)")->required();
    cmd_ev->add_option("--test", ev.test, "Stack to evaluate (.quad)");
    cmd_ev->add_option("--method", ev.method,
                       "Run this method on the simulated mosaic instead of --test");
    cmd_ev->add_option("--k0", ev.k0, "Logistic steepness at dynamic range 255")
        ->envname("DOFP_K0")
        ->capture_default_str();
    cmd_ev->add_option("--decision", ev.decision, "logistic | ternary[:threshold]")
        ->capture_default_str();
    auto* ev_pat = cmd_ev->add_option("--pattern", ev.pattern,
                                      "PFA tile, e.g. \"90,45;135,0\"");
    cmd_ev->add_option("--threads", ev.threads, "Worker threads")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd_ev->add_flag("--aolp-wrap", ev.aolp_wrap,
                     "Wrap-aware AoLP error min(|d|, pi - |d|)");
    cmd_ev->add_option("--report", ev.report,
                       "Report base path; writes <base>.txt and <base>.csv");

    BenchArgs bn;
    auto* cmd_bn = app.add_subcommand("bench", "Time demosaicking methods");
    cmd_bn->add_option("input", bn.input, "Mosaic image (.pgm/.png/.raw)")->required();
    cmd_bn->add_option("--methods", bn.methods, "Comma-separated method list")
        ->capture_default_str();
    cmd_bn->add_option("--reps", bn.reps, "Timing repetitions (>= 3)")
        ->capture_default_str();
    cmd_bn->add_option("--threads", bn.threads, "Worker threads")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    auto* bn_pat = cmd_bn->add_option("--pattern", bn.pattern,
                                      "PFA tile, e.g. \"90,45;135,0\"");

    CLI11_PARSE(app, argc, argv);

    dm.pattern_given = dm_pat->count() > 0;
    sim.pattern_given = sim_pat->count() > 0;
    ev.pattern_given = ev_pat->count() > 0;
    bn.pattern_given = bn_pat->count() > 0;

    try {
        if (cmd_dm->parsed()) return run_demosaic(dm);
        if (cmd_sim->parsed()) return run_simulate(sim);
        if (cmd_stk->parsed()) return run_stokes(stk);
        if (cmd_ev->parsed()) return run_eval(ev);
        if (cmd_bn->parsed()) return run_bench(bn);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
