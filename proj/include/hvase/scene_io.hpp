#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "hvase/realize.hpp"

namespace hvase {

inline constexpr int kSceneVersion = 1;

/// Schema violation; `path()` is a JSON pointer to the offending field.
class SceneFormatError : public std::runtime_error {
 public:
  SceneFormatError(const std::string& what, std::string path)
      : std::runtime_error(what + " at " + (path.empty() ? "/" : path)), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

class SceneVersionError : public SceneFormatError {
 public:
  using SceneFormatError::SceneFormatError;
};

struct SaveOptions {
  bool include_meshes = false;
};

/// Deterministic JSON document; doubles are written in shortest round-trip form.
std::string save_scene(const Scene& scene, const SaveOptions& opts = {});

/// Inverse of save_scene. Unknown fields and other versions are rejected.
Scene load_scene(std::string_view text);

void write_scene_file(const std::filesystem::path& path, const Scene& scene, const SaveOptions& opts = {});
Scene read_scene_file(const std::filesystem::path& path);

/// Canonical JSON of a build config (stable key order).
std::string config_json(const BuildConfig& config);

/// FNV-1a 64-bit hash of config_json, as 16 hex digits.
std::string config_hash(const BuildConfig& config);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace hvase
