// cache.hpp
//
// Cache directory resolution and atomic file replacement. Tables are written
// to a temporary sibling and renamed into place, so a reader sees either the
// old file or the complete new one.

#pragma once

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>

#include <unistd.h>

namespace hardy {

inline constexpr const char* cache_env_var = "HARDY_LAB_CACHE";

inline std::filesystem::path cache_directory(const std::optional<std::filesystem::path>& override_dir = std::nullopt) {
  if (override_dir && !override_dir->empty()) return *override_dir;
  if (const char* env = std::getenv(cache_env_var); env != nullptr && *env != '\0') return env;
  return ".hardy-cache";
}

inline void atomic_write(const std::filesystem::path& target, const std::string& content) {
  static std::atomic<unsigned long> counter{0};
  const auto dir = target.parent_path();
  if (!dir.empty()) std::filesystem::create_directories(dir);
  std::ostringstream tmp_name;
  tmp_name << '.' << target.filename().string() << ".tmp." << ::getpid() << '.'
           << std::hash<std::thread::id>{}(std::this_thread::get_id()) << '.' << counter++;
  const auto tmp = dir / tmp_name.str();
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, target, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw std::runtime_error("rename to " + target.string() + " failed: " + ec.message());
  }
}

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Parses "key=value" tokens of a cache header line.
inline std::optional<std::string> header_field(const std::string& header, const std::string& key) {
  std::istringstream in(header);
  std::string tok;
  while (in >> tok) {
    if (tok.size() > key.size() && tok.compare(0, key.size(), key) == 0 && tok[key.size()] == '=') {
      return tok.substr(key.size() + 1);
    }
  }
  return std::nullopt;
}

}  // namespace hardy
