#pragma once

// JSON plumbing: the repo matrix format and a fixed-precision writer.

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "polargrass/numeric.hpp"

namespace polargrass {

using json = nlohmann::ordered_json;

/// Malformed input or unreadable file. Maps to CLI exit status 1.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// {"rows": R, "cols": C, "data": [[re, im], ...]} row-major.
json matrix_to_json(const CMatrix& a);
json matrix_to_json(const RMatrix& a);
CMatrix matrix_from_json(const json& j);

/// Same as matrix_from_json but rejects entries with nonzero imaginary part.
RMatrix real_matrix_from_json(const json& j);

json complex_to_json(cplx z);
cplx complex_from_json(const json& j);

/// Throws ParseError listing the first key of `j` not in `allowed`.
void reject_unknown_keys(const json& j, std::initializer_list<const char*> allowed,
                         const char* where);

/// Typed field access with ParseError on absence or type mismatch.
const json& require_field(const json& j, const char* key, const char* where);
double number_field(const json& j, const char* key, const char* where);

json read_json_file(const std::string& path);

/// Serializes with every double printed at 17 significant digits.
std::string dump_json(const json& j, int indent = 2);

void write_text_file(const std::string& path, const std::string& text);

}  // namespace polargrass
