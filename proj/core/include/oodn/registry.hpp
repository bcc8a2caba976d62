#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "oodn/model.hpp"

namespace oodn {

/// A directory of class files plus `index.json` mapping class names to
/// files. One class per file; names are unique.
class Registry {
 public:
  /// Opens `dir`, creating it (and an empty index) if needed. Every indexed
  /// file is loaded and validated; a broken entry throws.
  static Registry open(const std::filesystem::path& dir);

  const std::filesystem::path& directory() const { return dir_; }

  bool contains(const std::string& name) const { return index_.count(name) != 0; }

  /// Saves `c` as `<name>.cls` and records it. Throws Error if the name is
  /// taken and `replace` is false.
  std::filesystem::path put(const AnyClass& c, bool replace = false);

  AnyClass get(const std::string& name) const;

  /// Returns false if `name` was not registered.
  bool remove(const std::string& name);

  /// Registered names, sorted.
  std::vector<std::string> names() const;

  std::filesystem::path path_of(const std::string& name) const;

 private:
  explicit Registry(std::filesystem::path dir) : dir_(std::move(dir)) {}
  void write_index() const;

  std::filesystem::path dir_;
  std::map<std::string, std::string> index_;  // name -> file name within dir_
};

}  // namespace oodn
