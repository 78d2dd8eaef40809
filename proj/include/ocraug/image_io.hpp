#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "ocraug/raster.hpp"

namespace ocraug {

// Decodes PNG or JPEG bytes to an 8-bit gray or RGB raster. Alpha is
// composited onto white. Throws SampleError on undecodable input.
Raster decode_image(std::span<const std::uint8_t> bytes);
Raster read_image(const std::filesystem::path& path);

// Lossless 8-bit PNG with 1 (gray), 3 (RGB) or 4 (RGBA) channels. Output
// bytes depend only on the raster content.
std::vector<std::uint8_t> encode_png(const Raster& img);
void write_png(const std::filesystem::path& path, const Raster& img);

std::vector<std::uint8_t> read_file(const std::filesystem::path& path);
// Writes through a temporary sibling and renames it into place.
void write_file_atomic(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

}  // namespace ocraug
