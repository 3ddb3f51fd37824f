#pragma once

#include <filesystem>
#include <string>

#include "baseline/gray_image.hpp"
#include "covis/overlap.hpp"
#include "geometry/camera.hpp"

namespace covision {

// Depth file: "CVDZ", u32 height, u32 width (little-endian), then
// height * width little-endian float32 meters, row-major.
inline constexpr char kDepthMagic[4] = {'C', 'V', 'D', 'Z'};

std::string encode_depth(const DepthImage& depth);
DepthImage decode_depth(const std::string& bytes, const std::string& origin);
void write_depth(const std::filesystem::path& path, const DepthImage& depth);
DepthImage read_depth(const std::filesystem::path& path);

// Binary 8-bit portable graymap (P5).
std::string encode_pgm(const GrayImage& image);
GrayImage decode_pgm(const std::string& bytes, const std::string& origin);

// Mask text: "i j width height", then one line of run lengths per row,
// alternating false/true and starting with a (possibly empty) false run.
std::string encode_mask(const CovisMask& mask);
CovisMask decode_mask(const std::string& text, const std::string& origin);

/// Uncompressed 8-bit grayscale BMP, for browsers.
std::string encode_bmp(const GrayImage& image);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& bytes);

}  // namespace covision
