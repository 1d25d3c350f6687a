#pragma once

#include <string>

#include "json.hpp"
#include "schatten/matrix.hpp"

namespace schatten {

/// Matrix literal: {"rows": r, "cols": c, "re": [...], "im": [...]}, row-major; "im" optional.
Matrix matrix_from_json(const nlohmann::json& j);
nlohmann::json matrix_to_json(const Matrix& m);

/// A family is either {"members": [literal, ...]} or a bare array of literals.
/// A single matrix literal is accepted as a one-member family.
Family family_from_json(const nlohmann::json& j);
nlohmann::json family_to_json(const Family& f);

/// Reads and parses a JSON file; errors name the file.
nlohmann::json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const nlohmann::json& j);

} // namespace schatten
