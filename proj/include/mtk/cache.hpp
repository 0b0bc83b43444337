#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "mtk/rational.hpp"

namespace mtk {

// Directory for on-disk caches: $MTK_CACHE_DIR, else ./mtk_cache.
std::filesystem::path cache_dir();

// Text cache of integer sequences, one "n value" line per entry, starting at index 1.
std::optional<std::vector<Int>> read_sequence(const std::filesystem::path& file, std::size_t n);
void write_sequence(const std::filesystem::path& file, const std::vector<Int>& values);

}  // namespace mtk
