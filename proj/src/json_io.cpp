#include "stargebra/json_io.hpp"

#include <fstream>
#include <sstream>

namespace stargebra::io {

namespace {

[[noreturn]] void bad(const std::string& field, const std::string& what) {
  throw Error(ErrorKind::Parse, "json", field + ": " + what);
}

const json& member(const json& j, const char* key, const std::string& field) {
  if (!j.is_object() || !j.contains(key)) bad(field, std::string("missing \"") + key + "\"");
  return j.at(key);
}

}  // namespace

json parse_json_text(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // Translate the byte offset into line:column.
    size_t line = 1, col = 1;
    for (size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw Error(ErrorKind::Parse, "json",
                source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + e.what());
  }
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, "json", path + ": cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json_text(ss.str(), path);
}

Complex parse_complex(const json& j, const std::string& field) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    bad(field, "expected a number or an [re, im] pair");
  return {j[0].get<double>(), j[1].get<double>()};
}

Vector parse_vector(const json& j, const std::string& field) {
  if (!j.is_array() || j.empty()) bad(field, "expected a non-empty array of [re, im] pairs");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (size_t i = 0; i < j.size(); ++i)
    v(static_cast<Eigen::Index>(i)) = parse_complex(j[i], field + "[" + std::to_string(i) + "]");
  return v;
}

Matrix parse_matrix(const json& j, const std::string& field) {
  if (!j.is_array() || j.empty()) bad(field, "expected a non-empty array of rows");
  const auto n = static_cast<Eigen::Index>(j.size());
  Matrix m(n, n);
  for (size_t r = 0; r < j.size(); ++r) {
    const auto& row = j[r];
    const std::string rf = field + "[" + std::to_string(r) + "]";
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) bad(rf, "row length differs from row count");
    for (size_t c = 0; c < row.size(); ++c)
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = parse_complex(row[c], rf + "[" + std::to_string(c) + "]");
  }
  if (!m.allFinite()) bad(field, "non-finite entry");
  return m;
}

Matrix parse_matrix_document(const json& j) {
  if (j.is_object()) return parse_matrix(member(j, "matrix", "document"), "matrix");
  return parse_matrix(j, "matrix");
}

AlgebraSpec parse_algebra_spec(const json& j) {
  AlgebraSpec spec;
  const auto& n = member(j, "ambient_dim", "algebra");
  if (!n.is_number_integer() || n.get<long long>() < 1) bad("ambient_dim", "expected a positive integer");
  spec.ambient_dim = n.get<Eigen::Index>();
  if (j.contains("generators")) {
    const auto& gens = j.at("generators");
    if (!gens.is_array()) bad("generators", "expected an array of matrices");
    for (size_t i = 0; i < gens.size(); ++i) {
      auto m = parse_matrix(gens[i], "generators[" + std::to_string(i) + "]");
      if (m.rows() != spec.ambient_dim) bad("generators[" + std::to_string(i) + "]", "dimension differs from ambient_dim");
      spec.generators.push_back(std::move(m));
    }
  }
  return spec;
}

GroupRingSpec parse_group_spec(const json& j) {
  const auto& g = member(j, "group", "group spec");
  std::optional<FiniteGroup> group;
  if (g.contains("cyclic")) {
    if (!g.at("cyclic").is_number_integer()) bad("group.cyclic", "expected an integer");
    group = FiniteGroup::cyclic(g.at("cyclic").get<int>());
  } else if (g.contains("table")) {
    const auto& t = g.at("table");
    if (!t.is_array()) bad("group.table", "expected an array of rows");
    std::vector<std::vector<int>> table;
    for (const auto& row : t) {
      if (!row.is_array()) bad("group.table", "expected rows of integers");
      std::vector<int> r;
      for (const auto& x : row) {
        if (!x.is_number_integer()) bad("group.table", "entries must be integers");
        r.push_back(x.get<int>());
      }
      table.push_back(std::move(r));
    }
    group = FiniteGroup::from_table(std::move(table));
  } else {
    bad("group", "expected \"cyclic\" or \"table\"");
  }
  GroupRingSpec spec{*group, {}};
  if (j.contains("coefficients")) {
    const Vector c = parse_vector(j.at("coefficients"), "coefficients");
    if (c.size() != group->order()) bad("coefficients", "length differs from group order");
    spec.coefficients.assign(c.data(), c.data() + c.size());
  }
  return spec;
}

RationalFn parse_rational(const json& j) {
  auto coeffs = [&](const char* key) {
    const Vector v = parse_vector(member(j, key, "rational"), key);
    return std::vector<Complex>(v.data(), v.data() + v.size());
  };
  return {coeffs("num"), coeffs("den")};
}

Functional parse_functional(const json& j, const StarAlgebra& algebra) {
  Matrix f = parse_matrix(member(j, "F", "functional"), "F");
  if (f.rows() != algebra.ambient_dim()) bad("F", "dimension differs from the algebra's ambient dimension");
  return {algebra, std::move(f)};
}

json to_json(Complex z) { return json::array({z.real(), z.imag()}); }

json to_json(const Vector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(to_json(v(i)));
  return out;
}

json to_json(const Matrix& m) {
  json out = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    out.push_back(std::move(row));
  }
  return out;
}

json to_json(const std::vector<Complex>& v) {
  json out = json::array();
  for (const auto& z : v) out.push_back(to_json(z));
  return out;
}

}  // namespace stargebra::io
