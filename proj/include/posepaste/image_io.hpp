// Copyright 2026 The posepaste Authors. All rights reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "posepaste/image.hpp"

namespace posepaste {

enum class ImageFormat { png, jpeg };

/// Picks the codec from the file extension (.png, .jpg, .jpeg; case-insensitive).
ImageFormat format_for_path(const std::filesystem::path& path);

bool is_image_path(const std::filesystem::path& path);

/// Decodes a PNG or JPEG (detected by signature) to RGB. Gray inputs are expanded.
ImageBuffer decode_image(std::span<const std::uint8_t> bytes);
ImageBuffer read_image(const std::filesystem::path& path);

/// Reads an 8-bit single-channel PNG. Color rasters are rejected.
GrayBuffer read_gray(const std::filesystem::path& path);

inline constexpr int kJpegQuality = 95;

std::vector<std::uint8_t> encode_image(const ImageBuffer& img, ImageFormat format);
std::vector<std::uint8_t> encode_png(const GrayBuffer& gray);

void write_image(const std::filesystem::path& path, const ImageBuffer& img);
void write_gray(const std::filesystem::path& path, const GrayBuffer& gray);

std::vector<std::uint8_t> read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

}  // namespace posepaste
