#include "cache.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <system_error>

namespace wcomp::cli {

namespace fs = std::filesystem;

ResultCache::ResultCache(const fs::path& dir, std::ostream& warnings) : dir_(dir), warnings_(&warnings) {
  std::error_code ec;
  fs::create_directories(dir_, ec);
  const fs::path probe = dir_ / ".write-probe";
  {
    std::ofstream out(probe);
    out << "ok";
    enabled_ = !ec && static_cast<bool>(out);
  }
  fs::remove(probe, ec);
  if (!enabled_) *warnings_ << "warning: cache directory " << dir_.string() << " is not writable; caching disabled\n";
}

std::string ResultCache::file_name(const std::string& key) {
  std::string name;
  for (char c : key) {
    const bool plain = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '-' || c == '.';
    name += plain ? c : '_';
  }
  // FNV-1a of the exact key keeps distinct keys apart after sanitising.
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : key) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(h));
  return name + "-" + hex + ".json";
}

std::optional<nlohmann::json> ResultCache::get(const std::string& key) {
  if (!enabled_) return std::nullopt;
  const fs::path file = dir_ / file_name(key);
  std::ifstream in(file);
  if (!in) {
    ++misses_;
    return std::nullopt;
  }
  try {
    nlohmann::json doc = nlohmann::json::parse(in);
    if (!doc.is_object() || !doc.contains("key") || !doc.at("key").is_string() || doc.at("key").get<std::string>() != key)
      throw std::runtime_error("key mismatch");
    doc.erase("key");
    ++hits_;
    return doc;
  } catch (const std::exception& e) {
    *warnings_ << "warning: ignoring corrupt cache entry " << file.string() << " (" << e.what() << ")\n";
    ++misses_;
    return std::nullopt;
  }
}

void ResultCache::put(const std::string& key, const nlohmann::json& result) {
  if (!enabled_) return;
  nlohmann::json doc = result;
  doc["key"] = key;
  const fs::path file = dir_ / file_name(key);
  const fs::path tmp = file.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    out << doc.dump() << '\n';
    if (!out) {
      *warnings_ << "warning: could not write cache entry " << file.string() << "\n";
      return;
    }
  }
  std::error_code ec;
  fs::rename(tmp, file, ec);
  if (ec) *warnings_ << "warning: could not publish cache entry " << file.string() << ": " << ec.message() << "\n";
}

}  // namespace wcomp::cli
