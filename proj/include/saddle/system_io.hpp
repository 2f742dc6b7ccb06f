#pragma once

#include <filesystem>

#include "saddle/system.hpp"

namespace saddle {

/// Writes A.mtx (symmetric), B.mtx, C.mtx, the vectors f.mtx, g.mtx, h.mtx and
/// a manifest.json holding {"n", "m", "l", "form"}. Creates `dir` if needed.
void write_system(const std::filesystem::path& dir, const SaddlePointSystem& s);

/// Inverse of write_system; dimensions in the manifest are cross-checked.
SaddlePointSystem read_system(const std::filesystem::path& dir);

}  // namespace saddle
