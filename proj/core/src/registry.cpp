#include "oodn/registry.hpp"

#include <nlohmann/json.hpp>

#include "oodn/class_file.hpp"
#include "oodn/errors.hpp"

namespace oodn {

namespace {

constexpr std::string_view kIndexFormat = "oodn-registry/1";
constexpr const char* kIndexFile = "index.json";

}  // namespace

Registry Registry::open(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create registry '" + dir.string() + "': " + ec.message());

  Registry reg(dir);
  const auto index_path = dir / kIndexFile;
  if (!std::filesystem::exists(index_path)) {
    reg.write_index();
    return reg;
  }

  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_file(index_path));
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(index_path.string() + ": " + e.what(), 0, 0);
  }
  if (!j.is_object() || j.value("format", "") != kIndexFormat || !j.contains("classes") ||
      !j["classes"].is_array()) {
    throw SchemaError(index_path.string() + ": not an " + std::string(kIndexFormat) + " index");
  }
  for (const auto& entry : j["classes"]) {
    if (!entry.is_object() || !entry.contains("name") || !entry.contains("file") ||
        !entry["name"].is_string() || !entry["file"].is_string()) {
      throw SchemaError(index_path.string() + ": malformed entry " + entry.dump());
    }
    const auto name = entry["name"].get<std::string>();
    const auto file = entry["file"].get<std::string>();
    if (!reg.index_.emplace(name, file).second) {
      throw SchemaError(index_path.string() + ": duplicate class name '" + name + "'");
    }
    AnyClass c = load(dir / file);
    if (c.name() != name) {
      throw SchemaError(index_path.string() + ": entry '" + name + "' points at class '" + c.name() + "'");
    }
  }
  return reg;
}

std::filesystem::path Registry::put(const AnyClass& c, bool replace) {
  if (contains(c.name()) && !replace) {
    throw Error("class '" + c.name() + "' is already registered in '" + dir_.string() + "'");
  }
  const std::string file = c.name() + ".cls";
  save(c, dir_ / file);
  index_[c.name()] = file;
  write_index();
  return dir_ / file;
}

AnyClass Registry::get(const std::string& name) const { return load(path_of(name)); }

bool Registry::remove(const std::string& name) {
  auto it = index_.find(name);
  if (it == index_.end()) return false;
  std::error_code ec;
  std::filesystem::remove(dir_ / it->second, ec);
  index_.erase(it);
  write_index();
  return true;
}

std::vector<std::string> Registry::names() const {
  std::vector<std::string> out;
  out.reserve(index_.size());
  for (const auto& [name, _] : index_) out.push_back(name);
  return out;
}

std::filesystem::path Registry::path_of(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) throw Error("class '" + name + "' is not registered");
  return dir_ / it->second;
}

void Registry::write_index() const {
  nlohmann::ordered_json j;
  j["format"] = kIndexFormat;
  j["classes"] = nlohmann::ordered_json::array();
  for (const auto& [name, file] : index_) {
    nlohmann::ordered_json e;
    e["name"] = name;
    e["file"] = file;
    j["classes"].push_back(std::move(e));
  }
  write_file_atomic(dir_ / kIndexFile, j.dump(2) + "\n");
}

}  // namespace oodn
