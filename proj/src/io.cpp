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

#include "dofp/io.hpp"

#include <png.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <stdexcept>

#include "json.hpp"

namespace dofp {

namespace {

void check_bit_depth(int bit_depth) {
    if (bit_depth < 1 || bit_depth > 16) {
        throw std::invalid_argument("bit depth must be in [1, 16]");
    }
}

unsigned max_value(int bit_depth) { return (1u << bit_depth) - 1u; }

void check_image(const GrayImage& img, const char* what) {
    check_bit_depth(img.bit_depth);
    if (img.width <= 0 || img.height <= 0) {
        throw std::invalid_argument(std::string(what) + ": empty image");
    }
    const std::size_t n =
        static_cast<std::size_t>(img.width) * static_cast<std::size_t>(img.height);
    if (img.samples.size() != n) {
        throw std::invalid_argument(std::string(what) + ": sample count mismatch");
    }
    const unsigned maxv = max_value(img.bit_depth);
    for (std::uint16_t s : img.samples) {
        if (s > maxv) {
            throw std::invalid_argument(std::string(what) +
                                        ": sample exceeds bit-depth range");
        }
    }
}

int bit_depth_from_maxval(unsigned maxval) {
    int bd = 1;
    while (max_value(bd) < maxval) ++bd;
    return bd;
}

// Next unsigned decimal token; skips whitespace and '#' comment lines. The
// single delimiter after the token is consumed, which is exactly the PNM
// rule for the byte preceding binary data.
unsigned next_pnm_int(std::istream& in, const std::string& path) {
    int c = in.get();
    while (c != EOF) {
        if (c == '#') {
            while (c != EOF && c != '\n') c = in.get();
        } else if (std::isspace(c)) {
            c = in.get();
        } else {
            break;
        }
    }
    unsigned v = 0;
    bool any = false;
    while (c != EOF && std::isdigit(c)) {
        v = v * 10 + static_cast<unsigned>(c - '0');
        if (v > 0xFFFFFFu) throw std::runtime_error(path + ": header value too large");
        any = true;
        c = in.get();
    }
    if (!any) throw std::runtime_error(path + ": malformed PGM header");
    return v;
}

struct FileCloser {
    void operator()(std::FILE* f) const {
        if (f) std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

std::string sidecar_path(const std::string& path) { return path + ".json"; }

// One raw payload plane: little-endian, 1 byte per sample up to 8 bits.
void append_raw_plane(std::string& out, const GrayImage& img) {
    if (img.bit_depth <= 8) {
        for (std::uint16_t s : img.samples) out.push_back(static_cast<char>(s));
    } else {
        for (std::uint16_t s : img.samples) {
            out.push_back(static_cast<char>(s & 0xFF));
            out.push_back(static_cast<char>(s >> 8));
        }
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::string data((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    return data;
}

void write_file(const std::string& path, const std::string& data) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
    if (!out) throw std::runtime_error("write failed: " + path);
}

RawMeta read_sidecar(const std::string& payload_path) {
    const std::string meta_path = sidecar_path(payload_path);
    std::ifstream in(meta_path);
    if (!in) throw std::runtime_error("cannot open sidecar " + meta_path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(meta_path + ": " + e.what());
    }
    RawMeta meta;
    try {
        meta.width = j.at("width").get<int>();
        meta.height = j.at("height").get<int>();
        meta.bit_depth = j.at("bit_depth").get<int>();
        meta.planes = j.value("planes", 1);
        meta.pattern = j.value("pattern", std::string());
        if (j.value("endianness", std::string("little")) != "little") {
            throw std::runtime_error(meta_path + ": only little-endian payloads");
        }
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(meta_path + ": " + e.what());
    }
    if (meta.width <= 0 || meta.height <= 0) {
        throw std::runtime_error(meta_path + ": bad dimensions");
    }
    check_bit_depth(meta.bit_depth);
    if (meta.planes != 1 && meta.planes != 4) {
        throw std::runtime_error(meta_path + ": planes must be 1 or 4");
    }
    return meta;
}

void write_sidecar(const std::string& payload_path, const RawMeta& meta) {
    nlohmann::json j;
    j["width"] = meta.width;
    j["height"] = meta.height;
    j["bit_depth"] = meta.bit_depth;
    j["endianness"] = "little";
    j["planes"] = meta.planes;
    if (meta.planes == 4) j["order"] = {"I0", "I45", "I90", "I135"};
    if (!meta.pattern.empty()) j["pattern"] = meta.pattern;
    write_file(sidecar_path(payload_path), j.dump(2) + "\n");
}

GrayImage decode_raw_plane(const std::string& data, std::size_t offset,
                           const RawMeta& meta) {
    GrayImage img;
    img.width = meta.width;
    img.height = meta.height;
    img.bit_depth = meta.bit_depth;
    const std::size_t n =
        static_cast<std::size_t>(meta.width) * static_cast<std::size_t>(meta.height);
    img.samples.resize(n);
    const auto* p = reinterpret_cast<const unsigned char*>(data.data()) + offset;
    if (meta.bit_depth <= 8) {
        for (std::size_t k = 0; k < n; ++k) img.samples[k] = p[k];
    } else {
        for (std::size_t k = 0; k < n; ++k) {
            img.samples[k] =
                static_cast<std::uint16_t>(p[2 * k] | (p[2 * k + 1] << 8));
        }
    }
    return img;
}

std::size_t plane_bytes(const RawMeta& meta) {
    return static_cast<std::size_t>(meta.width) * static_cast<std::size_t>(meta.height) *
           (meta.bit_depth <= 8 ? 1 : 2);
}

}  // namespace

std::uint16_t quantize_sample(double v, int bit_depth) {
    check_bit_depth(bit_depth);
    const double maxv = max_value(bit_depth);
    if (!(v >= 0.0)) v = 0.0;  // also catches NaN
    if (v > maxv) v = maxv;
    // nearbyint under the default FE_TONEAREST mode rounds ties to even.
    return static_cast<std::uint16_t>(std::nearbyint(v));
}

GrayImage quantize_plane(const Plane& p, int bit_depth) {
    GrayImage img;
    img.width = p.width();
    img.height = p.height();
    img.bit_depth = bit_depth;
    img.samples.resize(p.size());
    for (std::size_t k = 0; k < p.size(); ++k) {
        img.samples[k] = quantize_sample(p.samples()[k], bit_depth);
    }
    return img;
}

Plane to_plane(const GrayImage& img) {
    Plane p(img.width, img.height);
    for (std::size_t k = 0; k < p.size(); ++k) {
        p.samples()[k] = static_cast<double>(img.samples[k]);
    }
    return p;
}

GrayImage load_pgm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    if (in.get() != 'P' || in.get() != '5') {
        throw std::runtime_error(path + ": not a binary PGM (P5)");
    }
    const unsigned w = next_pnm_int(in, path);
    const unsigned h = next_pnm_int(in, path);
    const unsigned maxval = next_pnm_int(in, path);
    if (w == 0 || h == 0 || maxval == 0 || maxval > 65535) {
        throw std::runtime_error(path + ": bad PGM dimensions or maxval");
    }

    GrayImage img;
    img.width = static_cast<int>(w);
    img.height = static_cast<int>(h);
    img.bit_depth = bit_depth_from_maxval(maxval);
    const std::size_t n = static_cast<std::size_t>(w) * h;
    const bool wide = maxval > 255;
    std::vector<unsigned char> buf(n * (wide ? 2 : 1));
    in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
    if (static_cast<std::size_t>(in.gcount()) != buf.size()) {
        throw std::runtime_error(path + ": truncated PGM payload");
    }
    img.samples.resize(n);
    if (wide) {
        for (std::size_t k = 0; k < n; ++k) {
            img.samples[k] =
                static_cast<std::uint16_t>((buf[2 * k] << 8) | buf[2 * k + 1]);
        }
    } else {
        for (std::size_t k = 0; k < n; ++k) img.samples[k] = buf[k];
    }
    return img;
}

void save_pgm(const std::string& path, const GrayImage& img) {
    check_image(img, "save_pgm");
    const unsigned maxval = max_value(img.bit_depth);
    std::string out;
    out.reserve(32 + img.samples.size() * (maxval > 255 ? 2 : 1));
    out += "P5\n" + std::to_string(img.width) + " " + std::to_string(img.height) +
           "\n" + std::to_string(maxval) + "\n";
    if (maxval > 255) {
        for (std::uint16_t s : img.samples) {
            out.push_back(static_cast<char>(s >> 8));  // big-endian per PGM
            out.push_back(static_cast<char>(s & 0xFF));
        }
    } else {
        for (std::uint16_t s : img.samples) out.push_back(static_cast<char>(s));
    }
    write_file(path, out);
}

GrayImage load_png_gray(const std::string& path) {
    FilePtr fp(std::fopen(path.c_str(), "rb"));
    if (!fp) throw std::runtime_error("cannot open " + path);

    png_structp png =
        png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) throw std::runtime_error("libpng init failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_read_struct(&png, nullptr, nullptr);
        throw std::runtime_error("libpng init failed");
    }

    std::vector<png_byte> data;
    std::vector<png_bytep> rows;
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw std::runtime_error(path + ": PNG decode error");
    }
    png_init_io(png, fp.get());
    png_read_info(png, info);

    png_uint_32 w = 0, h = 0;
    int bd = 0, color = 0;
    png_get_IHDR(png, info, &w, &h, &bd, &color, nullptr, nullptr, nullptr);
    if (color != PNG_COLOR_TYPE_GRAY) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw std::runtime_error(path + ": grayscale PNG required");
    }
    if (bd < 8) png_set_expand_gray_1_2_4_to_8(png);
    png_read_update_info(png, info);

    const std::size_t rowbytes = png_get_rowbytes(png, info);
    data.resize(rowbytes * h);
    rows.resize(h);
    for (png_uint_32 r = 0; r < h; ++r) rows[r] = data.data() + r * rowbytes;
    png_read_image(png, rows.data());
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);

    GrayImage img;
    img.width = static_cast<int>(w);
    img.height = static_cast<int>(h);
    img.bit_depth = bd < 8 ? 8 : bd;
    const std::size_t n = static_cast<std::size_t>(w) * h;
    img.samples.resize(n);
    if (bd == 16) {
        for (std::size_t k = 0; k < n; ++k) {
            img.samples[k] =
                static_cast<std::uint16_t>((data[2 * k] << 8) | data[2 * k + 1]);
        }
    } else {
        for (std::size_t k = 0; k < n; ++k) img.samples[k] = data[k];
    }
    return img;
}

void save_png_gray(const std::string& path, const GrayImage& img) {
    check_image(img, "save_png_gray");
    const int chan_depth = img.bit_depth <= 8 ? 8 : 16;

    FilePtr fp(std::fopen(path.c_str(), "wb"));
    if (!fp) throw std::runtime_error("cannot open " + path + " for writing");
    png_structp png =
        png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) throw std::runtime_error("libpng init failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_write_struct(&png, nullptr);
        throw std::runtime_error("libpng init failed");
    }

    std::vector<png_byte> row(static_cast<std::size_t>(img.width) * (chan_depth / 8));
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw std::runtime_error(path + ": PNG encode error");
    }
    png_init_io(png, fp.get());
    png_set_IHDR(png, info, static_cast<png_uint_32>(img.width),
                 static_cast<png_uint_32>(img.height), chan_depth,
                 PNG_COLOR_TYPE_GRAY, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
                 PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    for (int i = 0; i < img.height; ++i) {
        const std::uint16_t* src =
            img.samples.data() + static_cast<std::size_t>(i) * img.width;
        if (chan_depth == 16) {
            for (int j = 0; j < img.width; ++j) {
                row[2 * j] = static_cast<png_byte>(src[j] >> 8);
                row[2 * j + 1] = static_cast<png_byte>(src[j] & 0xFF);
            }
        } else {
            for (int j = 0; j < img.width; ++j) row[j] = static_cast<png_byte>(src[j]);
        }
        png_write_row(png, row.data());
    }
    png_write_end(png, info);
    png_destroy_write_struct(&png, &info);
}

void save_png_rgb(const std::string& path, const Rgb8Image& img) {
    if (img.width <= 0 || img.height <= 0 ||
        img.rgb.size() != static_cast<std::size_t>(img.width) * img.height * 3) {
        throw std::invalid_argument("save_png_rgb: inconsistent raster");
    }

    FilePtr fp(std::fopen(path.c_str(), "wb"));
    if (!fp) throw std::runtime_error("cannot open " + path + " for writing");
    png_structp png =
        png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) throw std::runtime_error("libpng init failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_write_struct(&png, nullptr);
        throw std::runtime_error("libpng init failed");
    }

    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw std::runtime_error(path + ": PNG encode error");
    }
    png_init_io(png, fp.get());
    png_set_IHDR(png, info, static_cast<png_uint_32>(img.width),
                 static_cast<png_uint_32>(img.height), 8, PNG_COLOR_TYPE_RGB,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
                 PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    for (int i = 0; i < img.height; ++i) {
        png_write_row(png, const_cast<png_bytep>(img.rgb.data() +
                                                 static_cast<std::size_t>(i) *
                                                     img.width * 3));
    }
    png_write_end(png, info);
    png_destroy_write_struct(&png, &info);
}

GrayImage load_raw(const std::string& path, RawMeta* meta_out) {
    const RawMeta meta = read_sidecar(path);
    if (meta.planes != 1) {
        throw std::runtime_error(path + ": expected a single-plane payload");
    }
    const std::string data = read_file(path);
    if (data.size() != plane_bytes(meta)) {
        throw std::runtime_error(path + ": payload length does not match sidecar");
    }
    if (meta_out) *meta_out = meta;
    return decode_raw_plane(data, 0, meta);
}

void save_raw(const std::string& path, const GrayImage& img,
              const std::string& pattern) {
    check_image(img, "save_raw");
    RawMeta meta;
    meta.width = img.width;
    meta.height = img.height;
    meta.bit_depth = img.bit_depth;
    meta.planes = 1;
    meta.pattern = pattern;
    std::string payload;
    payload.reserve(plane_bytes(meta));
    append_raw_plane(payload, img);
    write_file(path, payload);
    write_sidecar(path, meta);
}

ChannelStack load_quad(const std::string& path, int* bit_depth) {
    const RawMeta meta = read_sidecar(path);
    if (meta.planes != 4) {
        throw std::runtime_error(path + ": expected a 4-plane container");
    }
    const std::string data = read_file(path);
    const std::size_t stride = plane_bytes(meta);
    if (data.size() != 4 * stride) {
        throw std::runtime_error(path + ": payload length does not match sidecar");
    }
    std::array<Plane, 4> planes;
    for (int p = 0; p < 4; ++p) {
        planes[p] = to_plane(decode_raw_plane(data, p * stride, meta));
    }
    if (bit_depth) *bit_depth = meta.bit_depth;
    return ChannelStack(std::move(planes));
}

void save_quad(const std::string& path, const ChannelStack& stack, int bit_depth) {
    check_bit_depth(bit_depth);
    if (stack.width() <= 0 || stack.height() <= 0) {
        throw std::invalid_argument("save_quad: empty stack");
    }
    RawMeta meta;
    meta.width = stack.width();
    meta.height = stack.height();
    meta.bit_depth = bit_depth;
    meta.planes = 4;
    std::string payload;
    payload.reserve(4 * plane_bytes(meta));
    for (Channel c : kAllChannels) {
        append_raw_plane(payload, quantize_plane(stack.plane(c), bit_depth));
    }
    write_file(path, payload);
    write_sidecar(path, meta);
}

FileFormat format_from_path(const std::string& path) {
    const std::size_t dot = path.rfind('.');
    std::string ext = dot == std::string::npos ? "" : path.substr(dot + 1);
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (ext == "pgm") return FileFormat::pgm;
    if (ext == "png") return FileFormat::png;
    if (ext == "raw") return FileFormat::raw;
    if (ext == "quad") return FileFormat::quad;
    throw std::invalid_argument(path + ": unknown image extension (use .pgm/.png/.raw/.quad)");
}

GrayImage load_gray(const std::string& path, RawMeta* meta) {
    switch (format_from_path(path)) {
        case FileFormat::pgm: return load_pgm(path);
        case FileFormat::png: return load_png_gray(path);
        case FileFormat::raw: return load_raw(path, meta);
        case FileFormat::quad: break;
    }
    throw std::runtime_error(path + ": a single-plane raster is required here");
}

void save_gray(const std::string& path, const GrayImage& img,
               const std::string& pattern) {
    switch (format_from_path(path)) {
        case FileFormat::pgm: save_pgm(path, img); return;
        case FileFormat::png: save_png_gray(path, img); return;
        case FileFormat::raw: save_raw(path, img, pattern); return;
        case FileFormat::quad: break;
    }
    throw std::runtime_error(path + ": a single-plane raster is required here");
}

}  // namespace dofp
