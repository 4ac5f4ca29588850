#pragma once

#include <nlohmann/json.hpp>
#include <string>

#include "mubkit/designs.hpp"
#include "mubkit/orbits.hpp"
#include "mubkit/states.hpp"

namespace mubkit {

/// JSON round trip for the core artifacts. Keys serialize in sorted order
/// (nlohmann's default object storage) and numbers use the library's
/// shortest exact representation, so equal values always produce identical
/// bytes. Malformed input throws ParseError.

nlohmann::json to_json(const Field &f);
Field field_from_json(const nlohmann::json &j);

nlohmann::json to_json(const StateSet &set);
StateSet state_set_from_json(const nlohmann::json &j);

nlohmann::json to_json(const DesignReport &report);

nlohmann::json to_json(const Orbit &o);

nlohmann::json to_json(const Theorem1Report &report);

/// Summary statistics of an enumerated group table (order, expected order,
/// symplectic label counts); the full table is an in-memory object only.
nlohmann::json group_stats_json(const GroupTable &table);

/// Parses a JSON file, translating stream and syntax failures to ParseError.
nlohmann::json load_json_file(const std::string &path);

}  // namespace mubkit
