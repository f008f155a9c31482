#pragma once

#include <string>

#include "ldo/dynamics.hpp"
#include "ldo/forms.hpp"
#include "ldo/matrix.hpp"

// JSON file formats. Rationals are "p/q" strings (plain integers are accepted on input).
// Every error is Config and names the file plus the JSON pointer of the offending value.
namespace ldo::io {

// { "label", "min_poly": [c0,...,1], "units": [[...],...], "cm": { "subfield_poly", "d", "relative_gen" } }
FieldSpec parse_field_spec(const std::string& text, const std::string& source = "<string>");
std::string field_spec_json(const FieldSpec& spec);
// a catalog name (q-sqrt2, ...) or a path to a field file
NumberField load_field(const std::string& name_or_path);

// [[entry, ...], ...] row-major, each entry a coefficient vector; or { "rows": ..., "det": entry }.
// "id" and "antidiag" are accepted as names when n is known.
MatrixK parse_matrix(const NumberField& k, const std::string& text, const std::string& source = "<string>");
MatrixK load_matrix(const NumberField& k, const std::string& name_or_path, int n);
std::string matrix_json(const MatrixK& m);

// { "n": n, "factors": [[[entry per variable], ...] per place], "alpha": [double per place]? }
DecomposableForm parse_form(const NumberField& k, const std::string& text, const std::string& source = "<string>");
DecomposableForm load_form(const NumberField& k, const std::string& path);
std::string form_json(const DecomposableForm& f);

// { "n": n, "base": [b per place]?, "exponents": [[[k per root] per step] per place] }
TorusPath parse_path(const std::string& text, const std::string& source = "<string>");
TorusPath load_path(const std::string& path);
std::string path_json(const TorusPath& p);

std::string read_file(const std::string& path);
std::string element_json(const FieldElement& x);  // ["p/q", ...]

}  // namespace ldo::io
