#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

namespace selfsense::io {

/// Encodes an RGB8 raster as PNG bytes. Deterministic for identical input.
std::vector<std::uint8_t> encode_png(int width, int height,
                                     const std::vector<std::uint8_t>& rgb);

void write_png(const std::filesystem::path& path, int width, int height,
               const std::vector<std::uint8_t>& rgb);

struct DecodedPng {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> rgb;
};

DecodedPng decode_png(const std::vector<std::uint8_t>& bytes);

}  // namespace selfsense::io
