#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "stargebra/algebra_core.hpp"
#include "stargebra/spectral_calculus.hpp"
#include "stargebra/states_gns.hpp"

// JSON conventions: complex numbers are [re, im] pairs, matrices are row-major
// arrays of rows. Malformed input raises Error(ErrorKind::Parse, ...) naming the
// offending field, and file-level syntax errors carry line and column.
namespace stargebra::io {

using json = nlohmann::json;

json read_json_file(const std::string& path);
json parse_json_text(const std::string& text, const std::string& source = "<input>");

Complex parse_complex(const json& j, const std::string& field);
Vector parse_vector(const json& j, const std::string& field);
Matrix parse_matrix(const json& j, const std::string& field);

/// A bare matrix, or an object {"matrix": ...}.
Matrix parse_matrix_document(const json& j);

struct AlgebraSpec {
  Eigen::Index ambient_dim = 0;
  std::vector<Matrix> generators;
};

/// {"ambient_dim": n, "generators": [matrix, ...]}
AlgebraSpec parse_algebra_spec(const json& j);

/// {"group": {"cyclic": N}} or {"group": {"table": [[...], ...]}}, with an
/// optional "coefficients": [[re, im], ...] indexed by group element.
GroupRingSpec parse_group_spec(const json& j);

/// {"num": [[re, im], ...], "den": [[re, im], ...]} in ascending degree.
RationalFn parse_rational(const json& j);

/// {"F": matrix}
Functional parse_functional(const json& j, const StarAlgebra& algebra);

json to_json(Complex z);
json to_json(const Vector& v);
json to_json(const Matrix& m);
json to_json(const std::vector<Complex>& v);

}  // namespace stargebra::io
