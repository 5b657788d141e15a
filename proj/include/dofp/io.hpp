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

#include <cstdint>
#include <string>
#include <vector>

#include "dofp/pfa.hpp"
#include "dofp/plane.hpp"
#include "dofp/stokes.hpp"

namespace dofp {

/// Integer raster as stored on disk. Files carry 1 byte per sample for bit
/// depths up to 8 and 2 bytes above; samples here are host-order regardless.
struct GrayImage {
    int width = 0;
    int height = 0;
    int bit_depth = 8;  // 1..16
    std::vector<std::uint16_t> samples;  // row-major
};

/// Export quantization: clamp to [0, 2^bit_depth - 1], round half to even.
/// The only place the pipeline leaves double precision.
std::uint16_t quantize_sample(double v, int bit_depth);
GrayImage quantize_plane(const Plane& p, int bit_depth);

Plane to_plane(const GrayImage& img);

/// Binary PGM (P5). maxval is 2^bit_depth - 1; two-byte samples are
/// big-endian per the format. Load infers bit depth from maxval.
GrayImage load_pgm(const std::string& path);
void save_pgm(const std::string& path, const GrayImage& img);

/// Grayscale PNG, 8- or 16-bit channel. Bit depths 9-15 are stored in a
/// 16-bit channel without rescaling.
GrayImage load_png_gray(const std::string& path);
void save_png_gray(const std::string& path, const GrayImage& img);

/// 8-bit RGB PNG for pseudo-color renders.
void save_png_rgb(const std::string& path, const Rgb8Image& img);

/// Sidecar metadata for raw payloads, stored as JSON at path + ".json".
/// Payload samples are little-endian; planes is 1 for a single raster and 4
/// for a channel-stack container (plane order I0, I45, I90, I135).
struct RawMeta {
    int width = 0;
    int height = 0;
    int bit_depth = 8;
    int planes = 1;
    std::string pattern;  // optional PFA pattern string, e.g. "90,45;135,0"
};

GrayImage load_raw(const std::string& path, RawMeta* meta = nullptr);
void save_raw(const std::string& path, const GrayImage& img,
              const std::string& pattern = "");

/// Four concatenated raw planes plus the JSON sidecar. Planes are quantized
/// to bit_depth on save; returned stacks hold the dequantized integers.
ChannelStack load_quad(const std::string& path, int* bit_depth = nullptr);
void save_quad(const std::string& path, const ChannelStack& stack, int bit_depth);

enum class FileFormat { pgm, png, raw, quad };

/// .pgm, .png, .raw, .quad (case-insensitive); anything else throws.
FileFormat format_from_path(const std::string& path);

/// Extension-dispatched single-raster load/save. For raw files, meta (when
/// given) receives the sidecar contents; save writes the sidecar alongside.
GrayImage load_gray(const std::string& path, RawMeta* meta = nullptr);
void save_gray(const std::string& path, const GrayImage& img,
               const std::string& pattern = "");

}  // namespace dofp
