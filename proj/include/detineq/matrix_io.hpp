#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "detineq/complex_matrix.hpp"

namespace detineq {

// {"rows": r, "cols": c, "entries": [[re, im], ...]} with entries row-major.
// Exactly those three keys are accepted.
nlohmann::json matrix_to_json(const ComplexMatrix& a);
ComplexMatrix matrix_from_json(const nlohmann::json& doc, const std::string& location = "$");

std::string format_matrix(const ComplexMatrix& a);
// Throws FormatError carrying the byte offset or JSON path of the problem.
ComplexMatrix parse_matrix(std::string_view text);
ComplexMatrix read_matrix_file(const std::filesystem::path& path);

// Reads a whole file; throws FormatError if it cannot be opened.
std::string read_text_file(const std::filesystem::path& path);
nlohmann::json parse_json_text(std::string_view text, const std::string& source);

}  // namespace detineq
