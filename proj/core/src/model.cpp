#include "oodn/model.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>
#include <sstream>
#include <tuple>

#include "oodn/errors.hpp"

namespace oodn {

std::string_view to_string(DataType type) {
  switch (type) {
    case DataType::integer:
      return "integer";
    case DataType::real:
      return "real";
    case DataType::text:
      return "text";
    case DataType::boolean:
      return "boolean";
  }
  return "?";
}

std::optional<DataType> parse_datatype(std::string_view text) {
  if (text == "integer") return DataType::integer;
  if (text == "real") return DataType::real;
  if (text == "text") return DataType::text;
  if (text == "boolean") return DataType::boolean;
  return std::nullopt;
}

DataType Value::datatype() const {
  switch (literal_.index()) {
    case 0:
      return DataType::integer;
    case 1:
      return DataType::real;
    case 2:
      return DataType::text;
    default:
      return DataType::boolean;
  }
}

std::string to_string(const Value& value) {
  const auto& lit = value.literal();
  if (const auto* i = std::get_if<std::int64_t>(&lit)) return std::to_string(*i);
  if (const auto* d = std::get_if<double>(&lit)) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), *d);
    return std::string(buf, res.ptr);
  }
  if (const auto* s = std::get_if<std::string>(&lit)) return '"' + *s + '"';
  return std::get<bool>(lit) ? "true" : "false";
}

const std::string& AnyClass::name() const {
  return std::visit([](const auto& c) -> const std::string& { return c.name; }, cls_);
}

AnyClass AnyClass::renamed(std::string new_name) const {
  return std::visit(
      [&](auto c) -> AnyClass {
        c.name = std::move(new_name);
        return AnyClass(std::move(c));
      },
      cls_);
}

bool is_identifier(std::string_view name) {
  if (name.empty()) return false;
  auto alpha = [](char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_'; };
  auto digit = [](char c) { return c >= '0' && c <= '9'; };
  if (!alpha(name.front())) return false;
  return std::all_of(name.begin() + 1, name.end(), [&](char c) { return alpha(c) || digit(c); });
}

bool eq_property(const Property& a, const Property& b) {
  return a.name == b.name && a.datatype == b.datatype && a.value == b.value;
}

bool eq_method(const Method& a, const Method& b) {
  if (a.name != b.name || a.returns != b.returns || a.params.size() != b.params.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.params.size(); ++i) {
    if (a.params[i].datatype != b.params[i].datatype) return false;
  }
  return true;
}

namespace {

// Greedy matching is exact here because the predicate is an equivalence
// relation: a bijection exists iff every class has equal counts on both sides.
template <typename T, typename Eq>
bool same_multiset(const std::vector<T>& a, const std::vector<T>& b, Eq eq) {
  if (a.size() != b.size()) return false;
  std::vector<bool> used(b.size(), false);
  for (const auto& x : a) {
    bool matched = false;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (!used[j] && eq(x, b[j])) {
        used[j] = true;
        matched = true;
        break;
      }
    }
    if (!matched) return false;
  }
  return true;
}

template <typename T, typename Eq>
bool contained_in(const std::vector<T>& a, const std::vector<T>& b, Eq eq) {
  return std::all_of(a.begin(), a.end(), [&](const T& x) {
    return std::any_of(b.begin(), b.end(), [&](const T& y) { return eq(x, y); });
  });
}

}  // namespace

bool eq_type(const HomogeneousClass& a, const HomogeneousClass& b) {
  return same_multiset(a.spec, b.spec, eq_property) && same_multiset(a.sig, b.sig, eq_method);
}

bool subtype_of(const HomogeneousClass& a, const HomogeneousClass& b) {
  return contained_in(a.spec, b.spec, eq_property) && contained_in(a.sig, b.sig, eq_method);
}

HomogeneousClass flatten_type(const HeterogeneousClass& c, std::size_t index) {
  if (index < 1 || index > c.projections.size()) {
    throw IndexOutOfRange("projection index " + std::to_string(index) + " out of range 1.." +
                          std::to_string(c.projections.size()) + " for class '" + c.name + "'");
  }
  const Projection& pr = c.projections[index - 1];
  HomogeneousClass t{pr.type_name, c.core_spec, c.core_sig};
  t.spec.insert(t.spec.end(), pr.spec.begin(), pr.spec.end());
  t.sig.insert(t.sig.end(), pr.sig.begin(), pr.sig.end());
  return t;
}

std::vector<HomogeneousClass> types_of(const AnyClass& c) {
  if (c.is_homogeneous()) return {c.homogeneous()};
  const auto& h = c.heterogeneous();
  std::vector<HomogeneousClass> out;
  out.reserve(h.projections.size());
  for (std::size_t i = 1; i <= h.projections.size(); ++i) out.push_back(flatten_type(h, i));
  return out;
}

Metrics metrics_of(const HomogeneousClass& t) { return {t.spec.size(), t.sig.size()}; }

// ---------------------------------------------------------------------------
// Validation

namespace {

std::string describe(const Method& m) {
  std::string s = m.name + "(";
  for (std::size_t i = 0; i < m.params.size(); ++i) {
    if (i) s += ", ";
    s += m.params[i].name + ": " + std::string(to_string(m.params[i].datatype));
  }
  s += ")";
  if (m.returns) s += " -> " + std::string(to_string(*m.returns));
  return s;
}

class Checker {
 public:
  explicit Checker(std::vector<std::string>& out) : out_(out) {}

  void name(std::string_view what, const std::string& n) {
    if (!is_identifier(n)) report(std::string(what) + " name '" + n + "' is not a valid identifier");
  }

  // Member-level rules for one specification/signature pair.
  void members(const std::string& where, const Specification& spec, const Signature& sig) {
    std::set<std::string> seen;
    for (const auto& p : spec) {
      if (!is_identifier(p.name)) {
        report(where + ": property name '" + p.name + "' is not a valid identifier");
      }
      if (p.value) {
        if (p.value->datatype() != p.datatype) {
          report(where + ": property '" + p.name + "' declared " + std::string(to_string(p.datatype)) +
                 " but its value is " + std::string(to_string(p.value->datatype())));
        } else if (const auto* d = std::get_if<double>(&p.value->literal()); d && !std::isfinite(*d)) {
          report(where + ": property '" + p.name + "' has a non-finite real value");
        }
      }
      if (!seen.insert(p.name).second) {
        report(where + ": property name '" + p.name + "' appears more than once");
      }
    }
    for (std::size_t i = 0; i < sig.size(); ++i) {
      const Method& m = sig[i];
      if (!is_identifier(m.name)) {
        report(where + ": method name '" + m.name + "' is not a valid identifier");
      }
      std::set<std::string> params;
      for (const auto& prm : m.params) {
        if (!is_identifier(prm.name)) {
          report(where + ": method '" + m.name + "' parameter name '" + prm.name +
                 "' is not a valid identifier");
        }
        if (!params.insert(prm.name).second) {
          report(where + ": method '" + m.name + "' repeats parameter name '" + prm.name + "'");
        }
      }
      for (std::size_t j = 0; j < i; ++j) {
        if (eq_method(sig[j], m)) {
          report(where + ": method '" + describe(m) + "' is declared more than once");
          break;
        }
      }
    }
  }

  void report(std::string msg) { out_.push_back(std::move(msg)); }

 private:
  std::vector<std::string>& out_;
};

void validate_homogeneous(const HomogeneousClass& c, Checker& check) {
  check.name("class", c.name);
  if (c.spec.empty() && c.sig.empty()) {
    check.report("class '" + c.name + "' has neither properties nor methods");
  }
  check.members("class '" + c.name + "'", c.spec, c.sig);
}

void validate_heterogeneous(const HeterogeneousClass& c, Checker& check) {
  check.name("class", c.name);
  if (c.projections.size() < 2) {
    check.report("class '" + c.name + "' has " + std::to_string(c.projections.size()) +
                 " projection(s); a heterogeneous class needs at least 2");
  }
  check.members("core of '" + c.name + "'", c.core_spec, c.core_sig);

  std::set<std::string> type_names;
  for (const auto& pr : c.projections) {
    const std::string where = "projection '" + pr.type_name + "'";
    check.name("projection", pr.type_name);
    if (!type_names.insert(pr.type_name).second) {
      check.report("projection type name '" + pr.type_name + "' appears more than once");
    }
    check.members(where, pr.spec, pr.sig);
    if (pr.spec.empty() && pr.sig.empty() && c.core_spec.empty() && c.core_sig.empty()) {
      check.report(where + " flattens to a type with neither properties nor methods");
    }
    for (const auto& p : pr.spec) {
      bool repeated = false;
      for (const auto& q : c.core_spec) {
        if (eq_property(p, q)) {
          check.report(where + " repeats core property '" + p.name + "'");
          repeated = true;
          break;
        }
      }
      if (!repeated) {
        for (const auto& q : c.core_spec) {
          if (q.name == p.name) {
            check.report(where + " property '" + p.name + "' reuses the name of a core property");
            break;
          }
        }
      }
    }
    for (const auto& m : pr.sig) {
      for (const auto& q : c.core_sig) {
        if (eq_method(m, q)) {
          check.report(where + " repeats core method '" + describe(m) + "'");
          break;
        }
      }
    }
  }

  for (std::size_t i = 0; i < c.projections.size(); ++i) {
    for (std::size_t j = i + 1; j < c.projections.size(); ++j) {
      if (eq_type(flatten_type(c, i + 1), flatten_type(c, j + 1))) {
        check.report("projections '" + c.projections[i].type_name + "' and '" +
                     c.projections[j].type_name + "' flatten to equivalent types");
      }
    }
  }
}

}  // namespace

std::vector<std::string> validate(const AnyClass& c) {
  std::vector<std::string> out;
  Checker check(out);
  if (c.is_homogeneous()) {
    validate_homogeneous(c.homogeneous(), check);
  } else {
    validate_heterogeneous(c.heterogeneous(), check);
  }
  return out;
}

std::vector<std::string> validation_warnings(const AnyClass& c) {
  std::vector<std::string> out;
  if (c.is_homogeneous()) return out;
  const auto& h = c.heterogeneous();
  if (h.core_spec.empty() && h.core_sig.empty()) {
    out.push_back("class '" + h.name + "' has an empty core");
  }
  for (const auto& pr : h.projections) {
    if (pr.spec.empty() && pr.sig.empty()) {
      out.push_back("projection '" + pr.type_name + "' is empty; its type equals the core");
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Canonical ordering

namespace {

auto method_key(const Method& m) {
  std::vector<int> types;
  std::vector<std::string_view> names;
  for (const auto& p : m.params) {
    types.push_back(static_cast<int>(p.datatype));
    names.push_back(p.name);
  }
  int ret = m.returns ? static_cast<int>(*m.returns) : -1;
  std::string_view body = m.body_ref ? std::string_view(*m.body_ref) : std::string_view();
  return std::make_tuple(std::string_view(m.name), std::move(types), ret, std::move(names),
                         m.body_ref.has_value(), body);
}

void sort_members(Specification& spec, Signature& sig) {
  std::stable_sort(spec.begin(), spec.end(),
                   [](const Property& a, const Property& b) { return a.name < b.name; });
  std::stable_sort(sig.begin(), sig.end(), method_less);
}

}  // namespace

bool method_less(const Method& a, const Method& b) { return method_key(a) < method_key(b); }

AnyClass canonicalize(const AnyClass& c) {
  if (c.is_homogeneous()) {
    HomogeneousClass out = c.homogeneous();
    sort_members(out.spec, out.sig);
    return out;
  }
  HeterogeneousClass out = c.heterogeneous();
  sort_members(out.core_spec, out.core_sig);
  for (auto& pr : out.projections) sort_members(pr.spec, pr.sig);
  std::stable_sort(out.projections.begin(), out.projections.end(),
                   [](const Projection& a, const Projection& b) { return a.type_name < b.type_name; });
  return out;
}

ValidationError::ValidationError(std::vector<std::string> violations)
    : Error([&] {
        std::ostringstream os;
        os << "class violates " << violations.size() << " invariant(s)";
        for (const auto& v : violations) os << "\n  - " << v;
        return os.str();
      }()),
      violations_(std::move(violations)) {}

}  // namespace oodn
