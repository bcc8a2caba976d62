#include "oodn/class_file.hpp"

#include <atomic>
#include <cerrno>
#include <cstring>
#include <ctime>
#include <fstream>
#include <limits>
#include <sstream>

#include <unistd.h>

#include <nlohmann/json.hpp>

#include "oodn/errors.hpp"

namespace oodn {

using Json = nlohmann::ordered_json;

namespace {

// ---------------------------------------------------------------------------
// Writing

Json value_json(const std::optional<Value>& v) {
  if (!v) return nullptr;
  return std::visit([](const auto& lit) -> Json { return lit; }, v->literal());
}

Json spec_json(const Specification& spec) {
  Json arr = Json::array();
  for (const auto& p : spec) {
    Json o;
    o["name"] = p.name;
    o["datatype"] = to_string(p.datatype);
    o["value"] = value_json(p.value);
    arr.push_back(std::move(o));
  }
  return arr;
}

Json sig_json(const Signature& sig) {
  Json arr = Json::array();
  for (const auto& m : sig) {
    Json o;
    o["name"] = m.name;
    Json params = Json::array();
    for (const auto& p : m.params) {
      Json po;
      po["name"] = p.name;
      po["datatype"] = to_string(p.datatype);
      params.push_back(std::move(po));
    }
    o["params"] = std::move(params);
    o["returns"] = m.returns ? Json(to_string(*m.returns)) : Json(nullptr);
    o["body_ref"] = m.body_ref ? Json(*m.body_ref) : Json(nullptr);
    arr.push_back(std::move(o));
  }
  return arr;
}

Json class_json(const AnyClass& raw) {
  const AnyClass c = canonicalize(raw);
  Json j;
  j["format"] = kClassFormat;
  if (c.is_homogeneous()) {
    const auto& h = c.homogeneous();
    j["kind"] = "homogeneous";
    j["name"] = h.name;
    j["specification"] = spec_json(h.spec);
    j["signature"] = sig_json(h.sig);
  } else {
    const auto& h = c.heterogeneous();
    j["kind"] = "heterogeneous";
    j["name"] = h.name;
    Json core;
    core["specification"] = spec_json(h.core_spec);
    core["signature"] = sig_json(h.core_sig);
    j["core"] = std::move(core);
    Json projections = Json::array();
    for (const auto& pr : h.projections) {
      Json o;
      o["type_name"] = pr.type_name;
      o["specification"] = spec_json(pr.spec);
      o["signature"] = sig_json(pr.sig);
      projections.push_back(std::move(o));
    }
    j["projections"] = std::move(projections);
  }
  return j;
}

std::string dump(const Json& j) {
  try {
    return j.dump(2) + "\n";
  } catch (const Json::type_error& e) {
    throw Error(std::string("cannot serialize class: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Reading

[[noreturn]] void schema(const std::string& where, const std::string& msg) {
  throw SchemaError(where + ": " + msg);
}

void check_keys(const Json& o, const std::string& where,
                std::initializer_list<std::string_view> allowed) {
  for (const auto& [key, _] : o.items()) {
    bool ok = false;
    for (auto a : allowed) ok = ok || key == a;
    if (!ok) schema(where, "unexpected field '" + key + "'");
  }
}

const Json& field(const Json& o, const std::string& where, const char* key) {
  auto it = o.find(key);
  if (it == o.end()) schema(where, std::string("missing field '") + key + "'");
  return *it;
}

const Json* optional_field(const Json& o, const char* key) {
  auto it = o.find(key);
  if (it == o.end() || it->is_null()) return nullptr;
  return &*it;
}

const Json& object(const Json& j, const std::string& where) {
  if (!j.is_object()) schema(where, "expected an object");
  return j;
}

const Json& array(const Json& j, const std::string& where) {
  if (!j.is_array()) schema(where, "expected an array");
  return j;
}

std::string text(const Json& j, const std::string& where) {
  if (!j.is_string()) schema(where, "expected a string");
  return j.get<std::string>();
}

DataType datatype(const Json& j, const std::string& where) {
  auto dt = parse_datatype(text(j, where));
  if (!dt) schema(where, "unknown datatype '" + j.get<std::string>() + "'");
  return *dt;
}

Value value(const Json& j, DataType dt, const std::string& where) {
  switch (dt) {
    case DataType::integer:
      if (j.is_number_integer()) {
        if (j.is_number_unsigned() &&
            j.get<std::uint64_t>() > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())) {
          schema(where, "integer value out of range");
        }
        return Value(j.get<std::int64_t>());
      }
      schema(where, "expected an integer value");
    case DataType::real:
      if (j.is_number()) return Value(j.get<double>());
      schema(where, "expected a real value");
    case DataType::text:
      if (j.is_string()) return Value(j.get<std::string>());
      schema(where, "expected a text value");
    case DataType::boolean:
      if (j.is_boolean()) return Value(j.get<bool>());
      schema(where, "expected a boolean value");
  }
  schema(where, "unknown datatype");
}

Specification read_spec(const Json& j, const std::string& where) {
  Specification spec;
  array(j, where);
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string at = where + "[" + std::to_string(i) + "]";
    const Json& o = object(j[i], at);
    check_keys(o, at, {"name", "datatype", "value"});
    Property p;
    p.name = text(field(o, at, "name"), at + ".name");
    p.datatype = datatype(field(o, at, "datatype"), at + ".datatype");
    if (const Json* v = optional_field(o, "value")) p.value = value(*v, p.datatype, at + ".value");
    spec.push_back(std::move(p));
  }
  return spec;
}

Signature read_sig(const Json& j, const std::string& where) {
  Signature sig;
  array(j, where);
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string at = where + "[" + std::to_string(i) + "]";
    const Json& o = object(j[i], at);
    check_keys(o, at, {"name", "params", "returns", "body_ref"});
    Method m;
    m.name = text(field(o, at, "name"), at + ".name");
    const Json& params = array(field(o, at, "params"), at + ".params");
    for (std::size_t k = 0; k < params.size(); ++k) {
      const std::string pat = at + ".params[" + std::to_string(k) + "]";
      const Json& po = object(params[k], pat);
      check_keys(po, pat, {"name", "datatype"});
      m.params.push_back({text(field(po, pat, "name"), pat + ".name"),
                          datatype(field(po, pat, "datatype"), pat + ".datatype")});
    }
    if (const Json* r = optional_field(o, "returns")) m.returns = datatype(*r, at + ".returns");
    if (const Json* b = optional_field(o, "body_ref")) m.body_ref = text(*b, at + ".body_ref");
    sig.push_back(std::move(m));
  }
  return sig;
}

Json parse_json(std::string_view input) {
  try {
    return Json::parse(input);
  } catch (const Json::parse_error& e) {
    // e.byte is the 1-based offset of the offending character.
    std::size_t line = 1, column = 1;
    const std::size_t end = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, input.size());
    for (std::size_t i = 0; i < end; ++i) {
      if (input[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
                         e.what(),
                     line, column);
  }
}

AnyClass read_class(const Json& j) {
  object(j, "$");
  check_keys(j, "$",
             {"format", "kind", "name", "specification", "signature", "core", "projections",
              "lineage", "emitted_at"});
  const std::string format = text(field(j, "$", "format"), "$.format");
  if (format != kClassFormat) {
    schema("$.format", "unsupported format '" + format + "', expected '" + std::string(kClassFormat) + "'");
  }
  const std::string kind = text(field(j, "$", "kind"), "$.kind");
  const std::string name = text(field(j, "$", "name"), "$.name");

  if (kind == "homogeneous") {
    if (j.contains("core") || j.contains("projections")) {
      schema("$", "homogeneous class cannot have 'core' or 'projections'");
    }
    HomogeneousClass c{name, read_spec(field(j, "$", "specification"), "$.specification"),
                       read_sig(field(j, "$", "signature"), "$.signature")};
    return c;
  }
  if (kind == "heterogeneous") {
    if (j.contains("specification") || j.contains("signature")) {
      schema("$", "heterogeneous class keeps members under 'core' and 'projections'");
    }
    HeterogeneousClass c;
    c.name = name;
    const Json& core = object(field(j, "$", "core"), "$.core");
    check_keys(core, "$.core", {"specification", "signature"});
    c.core_spec = read_spec(field(core, "$.core", "specification"), "$.core.specification");
    c.core_sig = read_sig(field(core, "$.core", "signature"), "$.core.signature");
    const Json& projections = array(field(j, "$", "projections"), "$.projections");
    for (std::size_t i = 0; i < projections.size(); ++i) {
      const std::string at = "$.projections[" + std::to_string(i) + "]";
      const Json& o = object(projections[i], at);
      check_keys(o, at, {"type_name", "specification", "signature"});
      c.projections.push_back({text(field(o, at, "type_name"), at + ".type_name"),
                               read_spec(field(o, at, "specification"), at + ".specification"),
                               read_sig(field(o, at, "signature"), at + ".signature")});
    }
    return c;
  }
  schema("$.kind", "expected 'homogeneous' or 'heterogeneous', got '" + kind + "'");
}

AnyClass checked(AnyClass c) {
  auto violations = validate(c);
  if (!violations.empty()) throw ValidationError(std::move(violations));
  return c;
}

}  // namespace

std::string serialize(const AnyClass& c) { return dump(class_json(c)); }

AnyClass parse_class(std::string_view text) { return checked(read_class(parse_json(text))); }

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "': " + std::strerror(errno));
  std::ostringstream os;
  os << in.rdbuf();
  if (in.bad()) throw IoError("cannot read '" + path.string() + "'");
  return os.str();
}

void write_file_atomic(const std::filesystem::path& path, std::string_view bytes) {
  static std::atomic<unsigned> counter{0};
  std::filesystem::path tmp = path;
  tmp += ".tmp-" + std::to_string(::getpid()) + "-" + std::to_string(counter++);
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write '" + path.string() + "': " + std::strerror(errno));
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) {
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      throw IoError("short write to '" + tmp.string() + "'");
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError("cannot replace '" + path.string() + "': " + ec.message());
  }
}

AnyClass load(const std::filesystem::path& path) {
  const std::string bytes = read_file(path);
  try {
    return parse_class(bytes);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what(), e.line(), e.column());
  } catch (const SchemaError& e) {
    throw SchemaError(path.string() + ": " + e.what());
  }
}

void save(const AnyClass& c, const std::filesystem::path& path) {
  auto violations = validate(c);
  if (!violations.empty()) throw ValidationError(std::move(violations));
  write_file_atomic(path, serialize(c));
}

std::string rfc3339_now() {
  std::time_t now = std::time(nullptr);
  std::tm utc{};
  gmtime_r(&now, &utc);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &utc);
  return buf;
}

std::string serialize_descriptor(const AnyClass& c, const Lineage& lineage,
                                 std::string_view emitted_at) {
  Json j = class_json(c);
  Json l;
  l["op"] = lineage.op;
  l["inputs"] = lineage.inputs;
  j["lineage"] = std::move(l);
  j["emitted_at"] = emitted_at;
  return dump(j);
}

void emit_descriptor(const AnyClass& c, const Lineage& lineage, const std::filesystem::path& path,
                     std::optional<std::string> emitted_at) {
  auto violations = validate(c);
  if (!violations.empty()) throw ValidationError(std::move(violations));
  write_file_atomic(path, serialize_descriptor(c, lineage, emitted_at ? *emitted_at : rfc3339_now()));
}

Descriptor parse_descriptor(std::string_view input) {
  const Json j = parse_json(input);
  AnyClass payload = checked(read_class(j));
  const Json& l = object(field(j, "$", "lineage"), "$.lineage");
  check_keys(l, "$.lineage", {"op", "inputs"});
  Descriptor d{std::move(payload), text(field(l, "$.lineage", "op"), "$.lineage.op"), {},
               text(field(j, "$", "emitted_at"), "$.emitted_at")};
  const Json& inputs = array(field(l, "$.lineage", "inputs"), "$.lineage.inputs");
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    d.inputs.push_back(text(inputs[i], "$.lineage.inputs[" + std::to_string(i) + "]"));
  }
  return d;
}

Descriptor load_descriptor(const std::filesystem::path& path) {
  const std::string bytes = read_file(path);
  try {
    return parse_descriptor(bytes);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what(), e.line(), e.column());
  } catch (const SchemaError& e) {
    throw SchemaError(path.string() + ": " + e.what());
  }
}

}  // namespace oodn
