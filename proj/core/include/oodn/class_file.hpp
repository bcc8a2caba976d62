#pragma once

// On-disk class files ("oodn-class/1") and descriptors.
//
// A class file is UTF-8 JSON with keys in a fixed order and members in
// canonical order, so saving a class is byte-deterministic. A descriptor is
// a class file with two extra top-level keys, `lineage` and `emitted_at`;
// loading a descriptor as a class file ignores them.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "oodn/exploiters.hpp"
#include "oodn/model.hpp"

namespace oodn {

inline constexpr std::string_view kClassFormat = "oodn-class/1";

/// Canonical text of a class file, newline-terminated.
std::string serialize(const AnyClass& c);

/// Parses and validates class-file text. Throws ParseError, SchemaError or
/// ValidationError.
AnyClass parse_class(std::string_view text);

AnyClass load(const std::filesystem::path& path);

/// Writes serialize(c) through a temporary file and a rename, so readers
/// never see a partial file. Throws ValidationError if `c` is invalid and
/// IoError on filesystem failure.
void save(const AnyClass& c, const std::filesystem::path& path);

struct Descriptor {
  AnyClass payload;
  std::string op;
  std::vector<std::string> inputs;
  std::string emitted_at;  // RFC 3339, UTC
};

/// Current UTC time as `YYYY-MM-DDTHH:MM:SSZ`.
std::string rfc3339_now();

std::string serialize_descriptor(const AnyClass& c, const Lineage& lineage,
                                 std::string_view emitted_at);

/// Writes a descriptor whose payload is canonicalize(c). When `emitted_at`
/// is not given the current time is used.
void emit_descriptor(const AnyClass& c, const Lineage& lineage, const std::filesystem::path& path,
                     std::optional<std::string> emitted_at = std::nullopt);

Descriptor parse_descriptor(std::string_view text);
Descriptor load_descriptor(const std::filesystem::path& path);

/// Reads a whole file. Throws IoError.
std::string read_file(const std::filesystem::path& path);

/// Temp-file-then-rename write. Throws IoError.
void write_file_atomic(const std::filesystem::path& path, std::string_view bytes);

}  // namespace oodn
