// SPDX-License-Identifier: Apache-2.0
#ifndef UWBNOTCH_GEOMETRY_IO_HPP
#define UWBNOTCH_GEOMETRY_IO_HPP

#include <json.hpp>
#include <string>

#include "uwbnotch/geometry.hpp"

namespace uwbnotch {

/// Versioned JSON form of a layout (schema_version 1, mm units).
nlohmann::json export_json(const AntennaGeometry& geom);
std::string export_json_text(const AntennaGeometry& geom);

/// Parses a layout document. Throws SchemaError carrying a JSON-path-like
/// location for any malformed or out-of-range field.
AntennaGeometry import_json(const nlohmann::json& doc);
AntennaGeometry import_json_text(const std::string& text);

/// Structural equality with coordinates compared at the given tolerance.
bool geometry_equal(const AntennaGeometry& a, const AntennaGeometry& b, double tol_mm = 1e-9);

}  // namespace uwbnotch

#endif  // UWBNOTCH_GEOMETRY_IO_HPP
