#include "oodn/exploiters.hpp"

#include <charconv>
#include <optional>
#include <set>
#include <unordered_map>

#include "oodn/errors.hpp"

namespace oodn {

std::string_view to_string(Strategy s) { return s == Strategy::naive ? "naive" : "keyed"; }

namespace {

// ---------------------------------------------------------------------------
// Equivalence keys. Two members share a key iff they are equivalent.

std::string property_key(const Property& p) {
  std::string key = p.name;
  key += '\x1f';
  key += static_cast<char>('0' + static_cast<int>(p.datatype));
  if (!p.value) return key + '-';
  const auto& lit = p.value->literal();
  key += '=';
  if (const auto* i = std::get_if<std::int64_t>(&lit)) {
    key += std::to_string(*i);
  } else if (const auto* d = std::get_if<double>(&lit)) {
    double v = *d == 0.0 ? 0.0 : *d;  // -0.0 == 0.0
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    key.append(buf, res.ptr);
  } else if (const auto* s = std::get_if<std::string>(&lit)) {
    key += *s;
  } else {
    key += std::get<bool>(lit) ? 'T' : 'F';
  }
  return key;
}

std::string method_key(const Method& m) {
  std::string key = m.name;
  key += '\x1f';
  for (const auto& p : m.params) key += static_cast<char>('0' + static_cast<int>(p.datatype));
  key += '\x1f';
  key += m.returns ? static_cast<char>('0' + static_cast<int>(*m.returns)) : '-';
  return key;
}

struct Counted {
  ExploiterStats& stats;

  bool props(const Property& a, const Property& b) {
    ++stats.property_comparisons;
    return eq_property(a, b);
  }
  bool methods(const Method& a, const Method& b) {
    ++stats.method_comparisons;
    return eq_method(a, b);
  }
};

// Members common to every type. `prop_matched[k][i]` is set when property i
// of type k took part in a fully equivalent tuple; core members are taken
// from the first type, in its order.
struct Common {
  std::vector<std::size_t> core_props;    // indices into types[0].spec
  std::vector<std::size_t> core_methods;  // indices into types[0].sig
  std::vector<std::vector<bool>> prop_matched;
  std::vector<std::vector<bool>> method_matched;
};

// Walks every n-tuple (one member per type) in mixed-radix order and checks
// that all of its elements are equivalent to the first.
template <typename Member, typename Access, typename Eq>
void naive_tuples(const std::vector<HomogeneousClass>& types, Access access, Eq eq,
                  std::vector<std::vector<bool>>& matched, std::vector<std::size_t>& core,
                  ExploiterStats& stats) {
  const std::size_t n = types.size();
  for (const auto& t : types) {
    if (access(t).empty()) return;  // no tuples at all
  }
  std::vector<std::size_t> idx(n, 0);
  while (true) {
    ++stats.tuples_considered;
    const Member& first = access(types[0])[idx[0]];
    bool all = true;
    for (std::size_t k = 1; k < n && all; ++k) all = eq(first, access(types[k])[idx[k]]);
    if (all) {
      core.push_back(idx[0]);
      for (std::size_t k = 0; k < n; ++k) matched[k][idx[k]] = true;
    }
    std::size_t pos = n;
    while (pos > 0) {
      --pos;
      if (++idx[pos] < access(types[pos]).size()) break;
      idx[pos] = 0;
      if (pos == 0) return;
    }
  }
}

template <typename Member, typename Access, typename KeyFn, typename Eq>
void keyed_match(const std::vector<HomogeneousClass>& types, Access access, KeyFn key_of, Eq eq,
                 std::vector<std::vector<bool>>& matched, std::vector<std::size_t>& core,
                 ExploiterStats& stats) {
  const std::size_t n = types.size();
  std::vector<std::unordered_map<std::string, std::vector<std::size_t>>> buckets(n);
  for (std::size_t k = 1; k < n; ++k) {
    const auto& members = access(types[k]);
    for (std::size_t i = 0; i < members.size(); ++i) buckets[k][key_of(members[i])].push_back(i);
  }
  const auto& first = access(types[0]);
  std::vector<std::size_t> hit(n);
  for (std::size_t i = 0; i < first.size(); ++i) {
    const std::string key = key_of(first[i]);
    hit[0] = i;
    bool all = true;
    for (std::size_t k = 1; k < n && all; ++k) {
      ++stats.tuples_considered;
      auto it = buckets[k].find(key);
      all = false;
      if (it == buckets[k].end()) break;
      for (std::size_t j : it->second) {
        if (eq(first[i], access(types[k])[j])) {
          hit[k] = j;
          all = true;
          break;
        }
      }
    }
    if (all) {
      core.push_back(i);
      for (std::size_t k = 0; k < n; ++k) matched[k][hit[k]] = true;
    }
  }
}

Common find_common(const std::vector<HomogeneousClass>& types, Strategy strategy,
                   ExploiterStats& stats) {
  Common c;
  for (const auto& t : types) {
    c.prop_matched.emplace_back(t.spec.size(), false);
    c.method_matched.emplace_back(t.sig.size(), false);
  }
  Counted eq{stats};
  auto spec = [](const HomogeneousClass& t) -> const Specification& { return t.spec; };
  auto sig = [](const HomogeneousClass& t) -> const Signature& { return t.sig; };
  auto peq = [&](const Property& a, const Property& b) { return eq.props(a, b); };
  auto meq = [&](const Method& a, const Method& b) { return eq.methods(a, b); };
  if (strategy == Strategy::naive) {
    naive_tuples<Property>(types, spec, peq, c.prop_matched, c.core_props, stats);
    naive_tuples<Method>(types, sig, meq, c.method_matched, c.core_methods, stats);
  } else {
    keyed_match<Property>(types, spec, property_key, peq, c.prop_matched, c.core_props, stats);
    keyed_match<Method>(types, sig, method_key, meq, c.method_matched, c.core_methods, stats);
  }
  return c;
}

// Indices of the first occurrence of each eq_type class, in order.
std::vector<std::size_t> distinct_types(const std::vector<HomogeneousClass>& types) {
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < types.size(); ++i) {
    bool dup = false;
    for (std::size_t j : keep) {
      if (eq_type(types[j], types[i])) {
        dup = true;
        break;
      }
    }
    if (!dup) keep.push_back(i);
  }
  return keep;
}

std::string unique_name(const std::string& base, std::set<std::string>& used) {
  if (used.insert(base).second) return base;
  for (std::size_t k = 2;; ++k) {
    std::string candidate = base + "_" + std::to_string(k);
    if (used.insert(candidate).second) return candidate;
  }
}

void require_identifier(const std::string& name) {
  if (!is_identifier(name)) throw InvalidName("'" + name + "' is not a valid class name");
}

// Builds the class for the types at `picked` (pairwise non-equivalent) given
// the members common to all of `types`.
AnyClass build(const std::vector<HomogeneousClass>& types, const std::vector<std::size_t>& picked,
               const Common& common, const std::string& result_name, Lineage& lineage) {
  if (picked.size() == 1) {
    HomogeneousClass only = types[picked.front()];
    only.name = result_name;
    lineage.notes.push_back("single type survived; result collapsed to a homogeneous class");
    return only;
  }
  HeterogeneousClass out;
  out.name = result_name;
  for (std::size_t i : common.core_props) out.core_spec.push_back(types[0].spec[i]);
  for (std::size_t i : common.core_methods) out.core_sig.push_back(types[0].sig[i]);
  std::set<std::string> used;
  for (std::size_t k : picked) {
    Projection pr;
    pr.type_name = unique_name(types[k].name, used);
    for (std::size_t i = 0; i < types[k].spec.size(); ++i) {
      if (!common.prop_matched[k][i]) pr.spec.push_back(types[k].spec[i]);
    }
    for (std::size_t i = 0; i < types[k].sig.size(); ++i) {
      if (!common.method_matched[k][i]) pr.sig.push_back(types[k].sig[i]);
    }
    out.projections.push_back(std::move(pr));
  }
  if (out.core_spec.empty() && out.core_sig.empty()) {
    lineage.notes.push_back("result has an empty core");
  }
  return out;
}

std::vector<HomogeneousClass> all_types(std::span<const AnyClass> classes) {
  std::vector<HomogeneousClass> out;
  for (const auto& c : classes) {
    auto ts = types_of(c);
    out.insert(out.end(), std::make_move_iterator(ts.begin()), std::make_move_iterator(ts.end()));
  }
  return out;
}

Lineage lineage_for(std::string op, std::initializer_list<std::span<const AnyClass>> groups) {
  Lineage l{std::move(op), {}, {}};
  for (auto g : groups) {
    for (const auto& c : g) l.inputs.push_back(c.name());
  }
  return l;
}

// Every type of `minuend` stripped of the members equivalent to some member
// of a type in `subtrahends`; empty results dropped.
std::vector<HomogeneousClass> reduce(const std::vector<HomogeneousClass>& minuend,
                                     const std::vector<HomogeneousClass>& subtrahends,
                                     Strategy strategy, ExploiterStats& stats) {
  Counted eq{stats};
  std::vector<HomogeneousClass> out;

  std::unordered_map<std::string, std::vector<const Property*>> prop_buckets;
  std::unordered_map<std::string, std::vector<const Method*>> method_buckets;
  if (strategy == Strategy::keyed) {
    for (const auto& v : subtrahends) {
      for (const auto& q : v.spec) prop_buckets[property_key(q)].push_back(&q);
      for (const auto& g : v.sig) method_buckets[method_key(g)].push_back(&g);
    }
  }

  for (const auto& u : minuend) {
    std::vector<bool> drop_prop(u.spec.size(), false);
    std::vector<bool> drop_method(u.sig.size(), false);
    if (strategy == Strategy::naive) {
      for (const auto& v : subtrahends) {
        for (std::size_t i = 0; i < u.spec.size(); ++i) {
          for (const auto& q : v.spec) {
            ++stats.tuples_considered;
            if (eq.props(u.spec[i], q)) drop_prop[i] = true;
          }
        }
        for (std::size_t i = 0; i < u.sig.size(); ++i) {
          for (const auto& g : v.sig) {
            ++stats.tuples_considered;
            if (eq.methods(u.sig[i], g)) drop_method[i] = true;
          }
        }
      }
    } else {
      for (std::size_t i = 0; i < u.spec.size(); ++i) {
        ++stats.tuples_considered;
        if (auto it = prop_buckets.find(property_key(u.spec[i])); it != prop_buckets.end()) {
          for (const Property* q : it->second) {
            if (eq.props(u.spec[i], *q)) {
              drop_prop[i] = true;
              break;
            }
          }
        }
      }
      for (std::size_t i = 0; i < u.sig.size(); ++i) {
        ++stats.tuples_considered;
        if (auto it = method_buckets.find(method_key(u.sig[i])); it != method_buckets.end()) {
          for (const Method* g : it->second) {
            if (eq.methods(u.sig[i], *g)) {
              drop_method[i] = true;
              break;
            }
          }
        }
      }
    }
    HomogeneousClass kept{u.name, {}, {}};
    for (std::size_t i = 0; i < u.spec.size(); ++i) {
      if (!drop_prop[i]) kept.spec.push_back(u.spec[i]);
    }
    for (std::size_t i = 0; i < u.sig.size(); ++i) {
      if (!drop_method[i]) kept.sig.push_back(u.sig[i]);
    }
    if (!kept.spec.empty() || !kept.sig.empty()) out.push_back(std::move(kept));
  }
  return out;
}

// Dedupe, then share a core among the survivors.
AnyClass assemble_from(const std::vector<HomogeneousClass>& types, Strategy strategy,
                       const std::string& result_name, ExploiterStats& stats, Lineage& lineage) {
  auto picked = distinct_types(types);
  std::vector<HomogeneousClass> survivors;
  for (std::size_t i : picked) survivors.push_back(types[i]);
  std::vector<std::size_t> all(survivors.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  Common common = survivors.size() > 1 ? find_common(survivors, strategy, stats) : Common{};
  return build(survivors, all, common, result_name, lineage);
}

}  // namespace

ExploiterOutcome union_of(std::span<const AnyClass> inputs, Strategy strategy,
                          const std::string& result_name) {
  if (inputs.size() < 2) {
    throw TooFewInputs("union needs at least 2 classes, got " + std::to_string(inputs.size()));
  }
  require_identifier(result_name);
  ExploiterStats stats;
  Lineage lineage = lineage_for("union", {inputs});

  // The core is searched over every input type, duplicates included, so the
  // naive tuple count is the full product over the inputs. Equivalent
  // duplicates do not change which members are common to all.
  const auto types = all_types(inputs);
  Common common = find_common(types, strategy, stats);
  auto picked = distinct_types(types);
  AnyClass result = build(types, picked, common, result_name, lineage);
  return {std::move(result), stats, std::move(lineage)};
}

ExploiterOutcome intersection_of(std::span<const AnyClass> inputs, Strategy strategy,
                                 const std::string& result_name) {
  if (inputs.size() < 2) {
    throw TooFewInputs("intersection needs at least 2 classes, got " +
                       std::to_string(inputs.size()));
  }
  require_identifier(result_name);
  ExploiterStats stats;
  Lineage lineage = lineage_for("intersection", {inputs});

  const auto types = all_types(inputs);
  Common common = find_common(types, strategy, stats);

  HomogeneousClass out{result_name, {}, {}};
  for (std::size_t i : common.core_props) out.spec.push_back(types[0].spec[i]);
  for (std::size_t i : common.core_methods) out.sig.push_back(types[0].sig[i]);
  if (out.spec.empty()) {
    std::string what = "intersection does not exist: no property is common to all " +
                       std::to_string(types.size()) + " types";
    if (!out.sig.empty()) {
      what += " (common methods:";
      for (const auto& m : out.sig) what += " " + m.name;
      what += ")";
    }
    throw DoesNotExist(what, std::move(out.sig));
  }
  return {AnyClass(std::move(out)), stats, std::move(lineage)};
}

ExploiterOutcome difference_of(const AnyClass& minuend, std::span<const AnyClass> subtrahends,
                               Strategy strategy, const std::string& result_name) {
  if (subtrahends.empty()) throw TooFewInputs("difference needs at least 1 subtrahend");
  require_identifier(result_name);
  ExploiterStats stats;
  Lineage lineage = lineage_for("difference", {std::span(&minuend, 1), subtrahends});

  auto kept = reduce(types_of(minuend), all_types(subtrahends), strategy, stats);
  if (kept.empty()) {
    throw DoesNotExist("difference does not exist: every member of '" + minuend.name() +
                       "' has an equivalent in the subtrahends");
  }
  AnyClass result = assemble_from(kept, strategy, result_name, stats, lineage);
  return {std::move(result), stats, std::move(lineage)};
}

ExploiterOutcome symmetric_difference_of(const AnyClass& a, const AnyClass& b, Strategy strategy,
                                         const std::string& result_name) {
  require_identifier(result_name);
  ExploiterStats stats;
  Lineage lineage = lineage_for("symmetric_difference", {std::span(&a, 1), std::span(&b, 1)});

  const auto ta = types_of(a);
  const auto tb = types_of(b);
  auto kept = reduce(ta, tb, strategy, stats);
  auto right = reduce(tb, ta, strategy, stats);
  kept.insert(kept.end(), right.begin(), right.end());
  if (kept.empty()) {
    throw DoesNotExist("symmetric difference does not exist: '" + a.name() + "' and '" +
                       b.name() + "' have no unique members");
  }
  AnyClass result = assemble_from(kept, strategy, result_name, stats, lineage);
  return {std::move(result), stats, std::move(lineage)};
}

AnyClass clone_class(const AnyClass& c, const std::string& new_name) {
  if (!is_identifier(new_name)) throw InvalidName("'" + new_name + "' is not a valid class name");
  return c.renamed(new_name);
}

AnyClass assemble_heterogeneous(std::span<const HomogeneousClass> types,
                                const std::string& result_name) {
  if (types.empty()) throw TooFewInputs("assemble needs at least 1 type");
  require_identifier(result_name);
  for (std::size_t i = 0; i < types.size(); ++i) {
    for (std::size_t j = i + 1; j < types.size(); ++j) {
      if (eq_type(types[i], types[j])) {
        throw DuplicateTypes("types '" + types[i].name + "' and '" + types[j].name +
                             "' are equivalent");
      }
    }
  }
  std::vector<HomogeneousClass> owned(types.begin(), types.end());
  ExploiterStats stats;
  Lineage lineage;
  return assemble_from(owned, Strategy::keyed, result_name, stats, lineage);
}

}  // namespace oodn
