#pragma once

// Universal exploiters: functions that take classes as unchangeable
// parameters and build new classes from them.
//
// Two interchangeable strategies compute the same results:
//  - naive: checks every n-tuple of members drawn one per type, as in the
//    textbook algorithms. Its tuple counter follows
//      D(t_1) x ... x D(t_n) + func(t_1) x ... x func(t_n)
//    exactly, which makes it the reference for the keyed strategy.
//  - keyed: buckets members by an equivalence key and compares only within
//    a bucket.
//
// Exploiters never modify their inputs; results are fresh values.

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "oodn/model.hpp"

namespace oodn {

enum class Strategy { naive, keyed };

std::string_view to_string(Strategy s);

struct ExploiterStats {
  std::uint64_t property_comparisons = 0;
  std::uint64_t method_comparisons = 0;
  std::uint64_t tuples_considered = 0;

  ExploiterStats& operator+=(const ExploiterStats& o) {
    property_comparisons += o.property_comparisons;
    method_comparisons += o.method_comparisons;
    tuples_considered += o.tuples_considered;
    return *this;
  }
};

struct Lineage {
  std::string op;
  std::vector<std::string> inputs;
  /// Structural remarks about the result: single-type collapse, empty core.
  std::vector<std::string> notes;
};

struct ExploiterOutcome {
  AnyClass result;
  ExploiterStats stats;
  Lineage lineage;
};

ExploiterOutcome union_of(std::span<const AnyClass> inputs, Strategy strategy,
                          const std::string& result_name);

/// Homogeneous intersection. Throws DoesNotExist when no property is common
/// to every type, even if some methods are (they are reported on the error).
ExploiterOutcome intersection_of(std::span<const AnyClass> inputs, Strategy strategy,
                                 const std::string& result_name);

/// Removes from every type of `minuend` the members equivalent to a member of
/// any type of any subtrahend. Throws DoesNotExist when nothing survives.
ExploiterOutcome difference_of(const AnyClass& minuend, std::span<const AnyClass> subtrahends,
                               Strategy strategy, const std::string& result_name);

ExploiterOutcome symmetric_difference_of(const AnyClass& a, const AnyClass& b, Strategy strategy,
                                         const std::string& result_name);

/// Deep copy under a new name. Throws InvalidName.
AnyClass clone_class(const AnyClass& c, const std::string& new_name);

/// Builds one class from pairwise non-equivalent types: a single type comes
/// back as-is (renamed); several share a core of the members common to all of
/// them, with one projection per type holding its leftovers. Projection names
/// come from the type names, with `_2`, `_3`, ... appended on collision.
/// Throws DuplicateTypes.
AnyClass assemble_heterogeneous(std::span<const HomogeneousClass> types,
                                const std::string& result_name);

}  // namespace oodn
