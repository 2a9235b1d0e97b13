#pragma once

#include <string>

#include "sps/image.hpp"

namespace sps {

/// Binary PGM (P5, maxval 255). Values are clamped to [0,255] and rounded on
/// write; comments in the header are accepted on read.
Image read_pgm(const std::string& path);
void write_pgm(const std::string& path, const Image& img);

/// Lossless float image: one ASCII header line "SPF1 <width> <height>\n"
/// followed by width*height little-endian 64-bit floats, row-major.
Image read_spf(const std::string& path);
void write_spf(const std::string& path, const Image& img);

}  // namespace sps
