#include "mtk/cache.hpp"

#include <cstdlib>
#include <fstream>
#include <mutex>
#include <sstream>

#include "mtk/errors.hpp"

namespace mtk {

namespace {
std::mutex g_cache_mutex;
}

std::filesystem::path cache_dir() {
  if (const char* env = std::getenv("MTK_CACHE_DIR")) return env;
  return "mtk_cache";
}

std::optional<std::vector<Int>> read_sequence(const std::filesystem::path& file, std::size_t n) {
  std::lock_guard<std::mutex> lock(g_cache_mutex);
  std::ifstream in(file);
  if (!in) return std::nullopt;
  std::vector<Int> out;
  std::string line;
  while (out.size() < n && std::getline(in, line)) {
    std::istringstream ls(line);
    std::string idx, value;
    if (!(ls >> idx >> value)) throw CacheCorrupt("malformed cache line in " + file.string());
    if (std::stoull(idx) != out.size() + 1)
      throw CacheCorrupt("non-contiguous cache index in " + file.string());
    out.emplace_back(value);
  }
  if (out.size() < n) return std::nullopt;
  return out;
}

void write_sequence(const std::filesystem::path& file, const std::vector<Int>& values) {
  std::lock_guard<std::mutex> lock(g_cache_mutex);
  std::filesystem::create_directories(file.parent_path());
  auto tmp = file;
  tmp += ".tmp";
  {
    std::ofstream out(tmp);
    for (std::size_t i = 0; i < values.size(); ++i) out << (i + 1) << ' ' << values[i] << '\n';
  }
  std::filesystem::rename(tmp, file);
}

}  // namespace mtk
