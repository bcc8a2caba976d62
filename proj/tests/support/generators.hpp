#pragma once

// Hand-rolled random class generators for property tests.
//
// Instances draw their members from a small shared pool so that classes
// overlap by name and by value often enough to exercise every branch.

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "oodn/exploiters.hpp"
#include "oodn/model.hpp"

namespace oodn::testing {

struct Pool {
  std::vector<Property> properties;  // several variants per name
  std::vector<Method> methods;       // pairwise non-equivalent
};

class Generator {
 public:
  explicit Generator(std::uint64_t seed) : rng_(seed) {}

  std::size_t uniform(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_);
  }
  bool chance(double p) { return std::bernoulli_distribution(p)(rng_); }

  DataType datatype() { return static_cast<DataType>(uniform(0, 3)); }

  Value small_value(DataType dt) {
    switch (dt) {
      case DataType::integer:
        return Value(static_cast<std::int64_t>(uniform(0, 2)));
      case DataType::real:
        return Value(0.5 + static_cast<double>(uniform(0, 1)));
      case DataType::text:
        return Value(chance(0.5) ? "x" : "y");
      case DataType::boolean:
        return Value(chance(0.5));
    }
    return Value(0);
  }

  Pool pool() {
    Pool p;
    const std::size_t names = uniform(3, 9);
    for (std::size_t i = 0; i < names; ++i) {
      const std::string name = "p" + std::to_string(i);
      const DataType main = datatype();
      const std::size_t variants = uniform(1, 3);
      for (std::size_t v = 0; v < variants; ++v) {
        Property prop{name, chance(0.8) ? main : datatype(), std::nullopt};
        if (chance(0.5)) prop.value = small_value(prop.datatype);
        if (std::none_of(p.properties.begin(), p.properties.end(),
                         [&](const Property& q) { return eq_property(q, prop); })) {
          p.properties.push_back(std::move(prop));
        }
      }
    }
    const std::size_t methods = uniform(2, 7);
    for (std::size_t i = 0; i < methods * 2 && p.methods.size() < methods; ++i) {
      Method m{"m" + std::to_string(uniform(0, 3)), {}, std::nullopt, std::nullopt};
      const std::size_t params = uniform(0, 2);
      for (std::size_t k = 0; k < params; ++k) m.params.push_back({"a" + std::to_string(k), datatype()});
      if (chance(0.4)) m.returns = datatype();
      if (chance(0.3)) m.body_ref = "impl_" + std::to_string(uniform(0, 99));
      if (std::none_of(p.methods.begin(), p.methods.end(),
                       [&](const Method& q) { return eq_method(q, m); })) {
        p.methods.push_back(std::move(m));
      }
    }
    return p;
  }

  HomogeneousClass homogeneous(const Pool& pool, std::string name, std::size_t max_props = 8,
                               std::size_t max_methods = 4) {
    HomogeneousClass c{std::move(name), {}, {}};
    std::vector<Property> props = pool.properties;
    std::shuffle(props.begin(), props.end(), rng_);
    const std::size_t want_props = uniform(0, max_props);
    for (const auto& p : props) {
      if (c.spec.size() >= want_props) break;
      if (std::none_of(c.spec.begin(), c.spec.end(), [&](const Property& q) { return q.name == p.name; })) {
        c.spec.push_back(p);
      }
    }
    std::vector<Method> methods = pool.methods;
    std::shuffle(methods.begin(), methods.end(), rng_);
    methods.resize(std::min(methods.size(), uniform(0, max_methods)));
    c.sig = std::move(methods);
    if (c.spec.empty() && c.sig.empty()) c.spec.push_back(pool.properties.front());
    return c;
  }

  /// A homogeneous class, or with probability `het` a heterogeneous class of
  /// 2..3 distinct types.
  AnyClass any(const Pool& pool, const std::string& name, double het = 0.25) {
    if (chance(het)) {
      std::vector<HomogeneousClass> types;
      const std::size_t want = uniform(2, 3);
      for (std::size_t i = 0; i < want; ++i) {
        auto t = homogeneous(pool, name + "_t" + std::to_string(i));
        if (std::none_of(types.begin(), types.end(), [&](const auto& u) { return eq_type(t, u); })) {
          types.push_back(std::move(t));
        }
      }
      if (types.size() >= 2) return assemble_heterogeneous(types, name);
    }
    return homogeneous(pool, name);
  }

  /// 2..max_classes classes over one pool. The number of types, and the
  /// product of type sizes, is bounded so the naive strategy stays cheap.
  std::vector<AnyClass> instance(std::size_t min_classes = 2, std::size_t max_classes = 5,
                                 double het = 0.25) {
    while (true) {
      const Pool p = pool();
      const std::size_t n = uniform(min_classes, max_classes);
      std::vector<AnyClass> out;
      std::uint64_t dims = 1, funcs = 1;
      std::size_t types = 0;
      for (std::size_t i = 0; i < n; ++i) {
        out.push_back(any(p, "C" + std::to_string(i), het));
        for (const auto& t : types_of(out.back())) {
          dims *= std::max<std::size_t>(t.spec.size(), 1);
          funcs *= std::max<std::size_t>(t.sig.size(), 1);
          ++types;
        }
      }
      if (types <= 7 && dims + funcs <= 200000) return out;
    }
  }

  /// Arbitrary well-formed class for serialization tests: unrestricted
  /// reals, text with escapes, optional body refs.
  AnyClass wild(const std::string& name) {
    auto members = [&](std::size_t max_p, std::size_t max_m, const std::string& prefix) {
      HomogeneousClass c{name, {}, {}};
      const std::size_t np = uniform(0, max_p);
      for (std::size_t i = 0; i < np; ++i) {
        Property p{prefix + "prop" + std::to_string(i), datatype(), std::nullopt};
        if (chance(0.7)) p.value = wild_value(p.datatype);
        c.spec.push_back(std::move(p));
      }
      const std::size_t nm = uniform(0, max_m);
      for (std::size_t i = 0; i < nm; ++i) {
        Method m{prefix + "op" + std::to_string(i), {}, std::nullopt, std::nullopt};
        const std::size_t params = uniform(0, 3);
        for (std::size_t k = 0; k < params; ++k) m.params.push_back({"arg" + std::to_string(k), datatype()});
        if (chance(0.5)) m.returns = datatype();
        if (chance(0.5)) m.body_ref = wild_text();
        c.sig.push_back(std::move(m));
      }
      return c;
    };
    if (chance(0.4)) {
      HeterogeneousClass h;
      h.name = name;
      auto core = members(3, 2, "core_");
      h.core_spec = core.spec;
      h.core_sig = core.sig;
      const std::size_t np = uniform(2, 4);
      for (std::size_t i = 0; i < np; ++i) {
        auto pr = members(3, 2, "t" + std::to_string(i) + "_");
        if (pr.spec.empty() && pr.sig.empty()) pr.spec.push_back({"t" + std::to_string(i) + "_only", DataType::boolean, std::nullopt});
        h.projections.push_back({"T" + std::to_string(i), pr.spec, pr.sig});
      }
      std::shuffle(h.projections.begin(), h.projections.end(), rng_);
      return h;
    }
    auto c = members(8, 4, "");
    if (c.spec.empty() && c.sig.empty()) c.spec.push_back({"only", DataType::integer, std::nullopt});
    std::shuffle(c.spec.begin(), c.spec.end(), rng_);
    return c;
  }

  std::string wild_text() {
    static const std::string alphabet = "abcXYZ 019\"\\/\t\n_-{}[]";
    std::string s;
    const std::size_t n = uniform(0, 12);
    for (std::size_t i = 0; i < n; ++i) s += alphabet[uniform(0, alphabet.size() - 1)];
    if (chance(0.2)) s += "\xc3\xa9\xe2\x82\xac";  // UTF-8 e-acute, euro sign
    return s;
  }

  Value wild_value(DataType dt) {
    switch (dt) {
      case DataType::integer:
        return Value(static_cast<std::int64_t>(rng_()));
      case DataType::real:
        return Value(std::uniform_real_distribution<double>(-1e12, 1e12)(rng_) /
                     static_cast<double>(uniform(1, 1000)));
      case DataType::text:
        return Value(wild_text());
      case DataType::boolean:
        return Value(chance(0.5));
    }
    return Value(0);
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace oodn::testing
