#pragma once

// Class model of object-oriented dynamic networks: homogeneous classes,
// single-core heterogeneous classes, and the structural predicates over them.
//
// Every type here is a plain value. Operations never mutate their arguments.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace oodn {

enum class DataType { integer, real, text, boolean };

std::string_view to_string(DataType type);
std::optional<DataType> parse_datatype(std::string_view text);

/// A literal of one of the four scalar datatypes. The datatype is derived
/// from the held alternative, so a literal can never disagree with its tag.
class Value {
 public:
  using Literal = std::variant<std::int64_t, double, std::string, bool>;

  Value(std::int64_t v) : literal_(v) {}
  Value(int v) : literal_(static_cast<std::int64_t>(v)) {}
  Value(double v) : literal_(v) {}
  Value(std::string v) : literal_(std::move(v)) {}
  Value(const char* v) : literal_(std::string(v)) {}
  Value(bool v) : literal_(v) {}

  DataType datatype() const;
  const Literal& literal() const { return literal_; }

  /// Literal equality. Reals compare with ==, so 0.0 and -0.0 are equal.
  friend bool operator==(const Value&, const Value&) = default;

 private:
  Literal literal_;
};

std::string to_string(const Value& value);

struct Property {
  std::string name;
  DataType datatype = DataType::integer;
  std::optional<Value> value;

  friend bool operator==(const Property&, const Property&) = default;
};

struct Parameter {
  std::string name;
  DataType datatype = DataType::integer;

  friend bool operator==(const Parameter&, const Parameter&) = default;
};

struct Method {
  std::string name;
  std::vector<Parameter> params;
  std::optional<DataType> returns;
  std::optional<std::string> body_ref;

  friend bool operator==(const Method&, const Method&) = default;
};

using Specification = std::vector<Property>;
using Signature = std::vector<Method>;

struct HomogeneousClass {
  std::string name;
  Specification spec;
  Signature sig;

  friend bool operator==(const HomogeneousClass&, const HomogeneousClass&) = default;
};

/// Members unique to one type of a heterogeneous class.
struct Projection {
  std::string type_name;
  Specification spec;
  Signature sig;

  friend bool operator==(const Projection&, const Projection&) = default;
};

struct HeterogeneousClass {
  std::string name;
  Specification core_spec;
  Signature core_sig;
  std::vector<Projection> projections;

  friend bool operator==(const HeterogeneousClass&, const HeterogeneousClass&) = default;
};

/// Either kind of class. This is what every exploiter consumes and produces.
class AnyClass {
 public:
  AnyClass(HomogeneousClass c) : cls_(std::move(c)) {}
  AnyClass(HeterogeneousClass c) : cls_(std::move(c)) {}

  bool is_homogeneous() const { return std::holds_alternative<HomogeneousClass>(cls_); }
  bool is_heterogeneous() const { return !is_homogeneous(); }

  const HomogeneousClass& homogeneous() const { return std::get<HomogeneousClass>(cls_); }
  const HeterogeneousClass& heterogeneous() const { return std::get<HeterogeneousClass>(cls_); }

  const std::string& name() const;
  AnyClass renamed(std::string new_name) const;

  const std::variant<HomogeneousClass, HeterogeneousClass>& variant() const { return cls_; }

  friend bool operator==(const AnyClass&, const AnyClass&) = default;

 private:
  std::variant<HomogeneousClass, HeterogeneousClass> cls_;
};

struct Metrics {
  std::size_t dimension = 0;      // number of properties
  std::size_t functionality = 0;  // number of methods

  friend bool operator==(const Metrics&, const Metrics&) = default;
};

/// Matches `[A-Za-z_][A-Za-z0-9_]*`.
bool is_identifier(std::string_view name);

// Equivalence. Names of classes and projections never participate.
bool eq_property(const Property& a, const Property& b);
bool eq_method(const Method& a, const Method& b);
bool eq_type(const HomogeneousClass& a, const HomogeneousClass& b);

/// Every member of `a` has an equivalent member in `b`.
bool subtype_of(const HomogeneousClass& a, const HomogeneousClass& b);

/// Core followed by the projection at 1-based `index`, named after the
/// projection. Throws IndexOutOfRange.
HomogeneousClass flatten_type(const HeterogeneousClass& c, std::size_t index);

std::vector<HomogeneousClass> types_of(const AnyClass& c);

Metrics metrics_of(const HomogeneousClass& t);

/// Invariant violations, one human-readable entry each. Empty iff valid.
std::vector<std::string> validate(const AnyClass& c);

/// Conditions that are legal but worth reporting (empty core, a projection
/// that adds nothing to the core).
std::vector<std::string> validation_warnings(const AnyClass& c);

/// Deterministic member ordering: properties by name, methods by name then
/// parameter datatypes, projections by type name.
AnyClass canonicalize(const AnyClass& c);

bool method_less(const Method& a, const Method& b);

}  // namespace oodn
