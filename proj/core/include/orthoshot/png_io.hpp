#pragma once

#include <string>

#include "orthoshot/augment.hpp"

namespace orthoshot {

// 8-bit PNG in, values scaled to [0,1]. Grayscale decodes to 1 channel,
// anything with color to 3; alpha is stripped, 16-bit narrowed to 8.
Image read_png(const std::string& path);

// Writes 1-channel (grayscale) or 3-channel (RGB) 8-bit PNG. Values are
// clamped to [0,1] and quantized by round(v*255).
void write_png(const std::string& path, const Image& img);

}  // namespace orthoshot
