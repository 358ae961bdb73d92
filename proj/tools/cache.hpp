#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>

#include "json.hpp"

namespace wcomp::cli {

// On-disk result cache: one JSON file per canonical problem key, written by
// atomic rename. Any failure degrades to a warning and a recomputation.
class ResultCache {
 public:
  ResultCache() = default;
  ResultCache(const std::filesystem::path& dir, std::ostream& warnings);

  bool enabled() const noexcept { return enabled_; }
  std::optional<nlohmann::json> get(const std::string& key);
  void put(const std::string& key, const nlohmann::json& result);

  std::size_t hits() const noexcept { return hits_; }
  std::size_t misses() const noexcept { return misses_; }

  static std::string file_name(const std::string& key);

 private:
  std::filesystem::path dir_;
  std::ostream* warnings_ = nullptr;
  bool enabled_ = false;
  std::size_t hits_ = 0;
  std::size_t misses_ = 0;
};

}  // namespace wcomp::cli
