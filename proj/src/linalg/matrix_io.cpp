#include "detineq/matrix_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "detineq/errors.hpp"

namespace detineq {

using nlohmann::json;

nlohmann::json matrix_to_json(const ComplexMatrix& a) {
  json entries = json::array();
  for (const auto& v : a.entries()) entries.push_back(json::array({v.real(), v.imag()}));
  return json{{"rows", a.rows()}, {"cols", a.cols()}, {"entries", std::move(entries)}};
}

namespace {

std::size_t positive_dimension(const json& doc, const char* key, const std::string& location) {
  const auto it = doc.find(key);
  if (it == doc.end()) throw FormatError(std::string("missing key \"") + key + "\"", location);
  if (!it->is_number_integer() || it->get<long long>() <= 0)
    throw FormatError(std::string("\"") + key + "\" must be a positive integer",
                      location + "." + key);
  return it->get<std::size_t>();
}

}  // namespace

ComplexMatrix matrix_from_json(const json& doc, const std::string& location) {
  if (!doc.is_object()) throw FormatError("matrix document must be an object", location);
  for (const auto& [key, _] : doc.items())
    if (key != "rows" && key != "cols" && key != "entries")
      throw FormatError("unexpected key \"" + key + "\"", location);
  const std::size_t rows = positive_dimension(doc, "rows", location);
  const std::size_t cols = positive_dimension(doc, "cols", location);
  const auto it = doc.find("entries");
  if (it == doc.end()) throw FormatError("missing key \"entries\"", location);
  if (!it->is_array()) throw FormatError("\"entries\" must be an array", location + ".entries");
  if (it->size() != rows * cols)
    throw FormatError("expected " + std::to_string(rows * cols) + " entries, found " +
                          std::to_string(it->size()),
                      location + ".entries");
  std::vector<Complex> entries;
  entries.reserve(rows * cols);
  for (std::size_t k = 0; k < it->size(); ++k) {
    const json& e = (*it)[k];
    const std::string where = location + ".entries[" + std::to_string(k) + "]";
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
      throw FormatError("entry must be a pair [re, im] of numbers", where);
    const double re = e[0].get<double>();
    const double im = e[1].get<double>();
    if (!std::isfinite(re) || !std::isfinite(im)) throw FormatError("entry is not finite", where);
    entries.emplace_back(re, im);
  }
  return ComplexMatrix(rows, cols, std::move(entries));
}

std::string format_matrix(const ComplexMatrix& a) { return matrix_to_json(a).dump(); }

json parse_json_text(std::string_view text, const std::string& source) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw FormatError(e.what(), source + ": byte " + std::to_string(e.byte));
  }
}

ComplexMatrix parse_matrix(std::string_view text) {
  return matrix_from_json(parse_json_text(text, "<input>"));
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open file", path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

ComplexMatrix read_matrix_file(const std::filesystem::path& path) {
  return matrix_from_json(parse_json_text(read_text_file(path), path.string()), path.string());
}

}  // namespace detineq
