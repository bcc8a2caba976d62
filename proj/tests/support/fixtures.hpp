#pragma once

// The vehicle fixtures, built in code so tests do not depend on the parser.

#include <filesystem>
#include <string>

#include "oodn/model.hpp"

namespace oodn::testing {

inline std::filesystem::path data_dir() { return OODN_TEST_DATA_DIR; }
inline std::filesystem::path fixture(const std::string& f) { return data_dir() / "fixtures" / f; }
inline std::filesystem::path golden(const std::string& f) { return data_dir() / "golden" / f; }

inline Property prop(std::string name, DataType dt) { return {std::move(name), dt, std::nullopt}; }
inline Property prop(std::string name, DataType dt, Value v) { return {std::move(name), dt, std::move(v)}; }
inline Method method(std::string name) { return {std::move(name), {}, std::nullopt, std::nullopt}; }

inline HomogeneousClass car() {
  return {"Car",
          {prop("wheels", DataType::integer, 4), prop("color", DataType::text),
           prop("doors", DataType::integer, 4)},
          {method("drive"), method("stop")}};
}

inline HomogeneousClass motorcycle() {
  return {"Motorcycle",
          {prop("wheels", DataType::integer, 2), prop("color", DataType::text)},
          {method("drive")}};
}

inline HomogeneousClass boat() {
  return {"Boat", {prop("displacement", DataType::real), prop("color", DataType::text)}, {method("sail")}};
}

inline HomogeneousClass no_overlap() {
  return {"NoOverlap", {prop("mass", DataType::real)}, {method("weigh")}};
}

inline HomogeneousClass car_plus() {
  HomogeneousClass c = car();
  c.name = "CarPlus";
  c.spec.push_back(prop("sunroof", DataType::boolean));
  return c;
}

inline HeterogeneousClass vehicles() {
  return {"Vehicles",
          {prop("color", DataType::text)},
          {method("drive")},
          {{"Car", {prop("wheels", DataType::integer, 4), prop("doors", DataType::integer, 4)}, {method("stop")}},
           {"Motorcycle", {prop("wheels", DataType::integer, 2)}, {}}}};
}

}  // namespace oodn::testing
