// Batch front end: every subcommand reads JSON inputs, runs one computation and
// writes a JSON (default) or plain-text report to stdout.
//
// Exit codes: 0 success, 1 parse error, 2 precondition violation, 3 numerical
// failure.

#include <cmath>
#include <cstdio>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "stargebra/algebra_core.hpp"
#include "stargebra/checks.hpp"
#include "stargebra/commutant.hpp"
#include "stargebra/evolution.hpp"
#include "stargebra/gelfand.hpp"
#include "stargebra/json_io.hpp"
#include "stargebra/linalg.hpp"
#include "stargebra/spectral_calculus.hpp"
#include "stargebra/spectral_measures.hpp"
#include "stargebra/states_gns.hpp"

namespace {

using namespace stargebra;
using io::json;
using io::to_json;

struct Options {
  std::optional<double> tol;
  std::uint64_t seed = 0;
  std::string output = "json";
  int k = 30;
};

double tol_or(const Options& o, double fallback) { return o.tol.value_or(fallback); }

/// A loaded algebra, plus the group ring when the input was a group spec.
struct LoadedAlgebra {
  StarAlgebra algebra;
  std::vector<Matrix> generators;
  std::optional<GroupRing> ring;
  GroupCoeffs coefficients;
};

LoadedAlgebra load_algebra(const std::string& path, const Options& o) {
  const json doc = io::read_json_file(path);
  if (doc.is_object() && doc.contains("group")) {
    const auto spec = io::parse_group_spec(doc);
    auto ring = group_ring(spec);
    return {ring.algebra, ring.embedding, ring, spec.coefficients};
  }
  const auto spec = io::parse_algebra_spec(doc);
  return {build_algebra(spec.ambient_dim, spec.generators, o.tol), spec.generators, std::nullopt, {}};
}

// ---------------------------------------------------------------- commands

json cmd_spectrum(const std::string& input, const Options& o) {
  const Matrix a = io::parse_matrix_document(io::read_json_file(input));
  const double tol = tol_or(o, 1e-10);
  const auto sp = spectrum(a, tol);
  return {
      {"dimension", a.rows()},
      {"eigenvalues", to_json(sp.eigenvalues)},
      {"spectral_radius", sp.radius()},
      {"spectral_radius_limit", spectral_radius_limit(a, o.k)},
      {"squarings", o.k},
      {"ptak", ptak(a)},
      {"operator_norm", linalg::op_norm(a)},
      {"hermitian", linalg::is_hermitian(a, tol)},
      {"normal", linalg::is_normal(a, tol)},
  };
}

json cmd_calculus(const std::string& input, const std::string& op, const std::string& rational_path, double mu,
                  const Options& o) {
  const Matrix a = io::parse_matrix_document(io::read_json_file(input));
  const double tol = tol_or(o, 1e-10);
  json out{{"op", op}};
  if (op == "sqrt") {
    out["result"] = to_json(positive_sqrt(a, tol));
  } else if (op == "sqrt-series") {
    out["result"] = to_json(sqrt_series(a, tol));
  } else if (op == "abs") {
    out["result"] = to_json(abs_value(a, tol));
  } else if (op == "polar") {
    const auto pf = polar_factorize(a, tol);
    out["unitary"] = to_json(pf.unitary);
    out["positive"] = to_json(pf.positive);
    out["residual"] = linalg::op_norm(a - pf.unitary * pf.positive);
  } else if (op == "orth") {
    const auto parts = orth_decompose(a, tol);
    out["plus"] = to_json(parts.plus);
    out["minus"] = to_json(parts.minus);
  } else if (op == "reflection") {
    const auto pq = reflection_split(a, tol);
    out["p"] = to_json(pq.p);
    out["q"] = to_json(pq.q);
  } else if (op == "cayley") {
    out["result"] = to_json(mu > 0 ? cayley_bounded(a, mu, tol) : cayley(SelfAdjointModel(a, tol)));
  } else if (op == "rational") {
    if (rational_path.empty()) throw Error(ErrorKind::Parse, "calculus", "--rational is required for op rational");
    const RationalFn r = io::parse_rational(io::read_json_file(rational_path));
    const Matrix ra = rational_apply(a, r, tol);
    out["result"] = to_json(ra);
    out["gamma"] = to_json(r.gamma());
    out["zeros"] = to_json(r.zeros());
    out["poles"] = to_json(r.poles());
    out["spectrum"] = to_json(spectrum(ra, tol).eigenvalues);
  } else {
    throw Error(ErrorKind::Parse, "calculus", "unknown op '" + op + "'");
  }
  return out;
}

json cmd_gelfand(const std::string& input, const Options& o) {
  const auto la = load_algebra(input, o);
  const auto chars = characters(la.algebra, o.seed);
  json out{{"algebra_dim", la.algebra.dim()}, {"character_count", chars.size()}};
  json values = json::array();
  for (Eigen::Index k = 0; k < chars.size(); ++k) values.push_back(to_json(Vector(chars.values.row(k).transpose())));
  out["characters"] = values;
  // Transforms of the generators (group elements for a group ring).
  json transforms = json::array();
  for (const auto& g : la.generators) transforms.push_back(to_json(gelfand_transform(la.algebra.coords(g), chars)));
  out[la.ring ? "group_element_transforms" : "generator_transforms"] = transforms;
  if (la.ring && !la.coefficients.empty()) {
    const Matrix a = la.ring->element(la.coefficients);
    out["coefficient_transform"] = to_json(gelfand_transform(la.algebra.coords(a), chars));
  }
  return out;
}

json cmd_gns(const std::string& input, const std::string& functional_path, const Options& o) {
  const auto la = load_algebra(input, o);
  const auto phi = io::parse_functional(io::read_json_file(functional_path), la.algebra);
  const double tol = tol_or(o, 1e-10);
  const auto report = classify_state(phi, tol);
  if (!report.is_positive) fail_precondition("gns", "functional is not positive");
  const auto g = gns(phi, tol);
  json reps = json::array();
  for (const auto& r : g.rep) reps.push_back(to_json(r));
  return {
      {"algebra_dim", la.algebra.dim()},
      {"quotient_dim", g.quotient_dim},
      {"cyclic_vector", to_json(g.cyclic_vector)},
      {"variation", report.variation},
      {"is_state", report.is_state},
      {"is_pure", report.is_pure},
      {"commutant_dim", report.commutant_dim},
      {"rep", reps},
  };
}

json cmd_decompose(const std::string& input, const Options& o) {
  const auto la = load_algebra(input, o);
  const auto dec = decompose_cyclic(la.algebra.basis(), o.seed, tol_or(o, 1e-9));
  json pieces = json::array();
  for (const auto& p : dec.pieces)
    pieces.push_back({{"dim", p.basis.cols()}, {"cyclic_vector", to_json(p.cyclic_vector)}});
  return {{"ambient_dim", la.algebra.ambient_dim()}, {"pieces", pieces}, {"null_space_dim", dec.null_space.cols()}};
}

json cmd_commutant(const std::string& input, const Options& o) {
  const json doc = io::read_json_file(input);
  const auto spec = io::parse_algebra_spec(doc);
  if (spec.generators.empty()) fail_precondition("commutant", "the set S is empty");
  const double rel = tol_or(o, 1e-10);
  const auto s1 = commutant(spec.generators, rel);
  const auto s2 = commutant(s1, rel);
  const auto w = wstar(spec.generators, rel);
  const auto alg = build_algebra(spec.ambient_dim, spec.generators, o.tol);
  json out{
      {"ambient_dim", spec.ambient_dim},
      {"commutant_dim", s1.dim()},
      {"bicommutant_dim", s2.dim()},
      {"wstar_dim", w.dim()},
      {"generated_algebra_dim", alg.dim()},
  };
  out["maximal_commutative"] = alg.is_commutative() ? json(is_maximal_commutative(alg)) : json(nullptr);
  return out;
}

json cmd_resolve(const std::string& input, const std::string& vector_path, const Options& o) {
  const Matrix b = io::parse_matrix_document(io::read_json_file(input));
  const auto p = resolve_normal(b, tol_or(o, 1e-8));
  json ranks = json::array();
  for (auto r : p.ranks()) ranks.push_back(r);
  json out{{"points", to_json(p.points)}, {"ranks", ranks}, {"reconstruction_error", reconstruction_error(b, p)}};
  if (!vector_path.empty()) {
    const Vector x = io::parse_vector(io::read_json_file(vector_path), "vector");
    if (x.size() != b.rows()) fail_precondition("resolve", "vector dimension differs from the matrix");
    const auto mu = vector_measure(p, x);
    std::vector<double> w = mu.weights;
    out["vector_measure"] = {{"weights", w}, {"total", mu.total()}};
  }
  return out;
}

struct TimeGrid {
  double start, stop, step;
};

TimeGrid parse_times(const std::string& s) {
  TimeGrid g{};
  char c1 = 0, c2 = 0;
  std::istringstream in(s);
  if (!(in >> g.start >> c1 >> g.stop >> c2 >> g.step) || c1 != ':' || c2 != ':' || !in.eof())
    throw Error(ErrorKind::Parse, "evolve", "--times must look like start:stop:step, got '" + s + "'");
  if (!(g.step > 0) || g.stop < g.start) fail_precondition("evolve", "--times needs step > 0 and stop >= start");
  return g;
}

json cmd_evolve(const std::string& a_path, const std::string& x_path, const std::string& times, const Options& o) {
  const SelfAdjointModel a(io::parse_matrix_document(io::read_json_file(a_path)), tol_or(o, 1e-10));
  const Vector x = io::parse_vector(io::read_json_file(x_path), "x");
  if (x.size() != a.dim()) fail_precondition("evolve", "x dimension differs from a");
  const auto grid = parse_times(times);
  const auto count = static_cast<long>(std::floor((grid.stop - grid.start) / grid.step + 1e-9)) + 1;
  constexpr double kStep = 1e-4;
  json rows = json::array();
  for (long i = 0; i < count; ++i) {
    const double t = grid.start + static_cast<double>(i) * grid.step;
    const Vector y = a.evolve(x, t);
    rows.push_back({{"t", t},
                    {"state", to_json(y)},
                    {"norm_deviation", std::abs(y.norm() - x.norm())},
                    {"ivp_residual", ivp_residual(a, x, t, kStep)}});
  }
  return {{"h", kStep}, {"rows", rows}};
}

json cmd_check(double scale, const Options& o) {
  checks::SuiteOptions so;
  so.seed = o.seed;
  so.scale = scale;
  const auto results = checks::run_suite(so);
  json props = json::array();
  int passed = 0, cases = 0, failed_props = 0;
  for (const auto& r : results) {
    json p{{"module", r.module},       {"name", r.name},         {"cases", r.cases},
           {"passed", r.passed},       {"tolerance", r.tolerance}, {"ok", r.ok()}};
    p["max_residual"] = std::isfinite(r.max_residual) ? json(r.max_residual) : json("inf");
    if (!r.first_error.empty()) p["error"] = r.first_error;
    props.push_back(p);
    passed += r.passed;
    cases += r.cases;
    if (!r.ok()) ++failed_props;
  }
  return {{"seed", o.seed},
          {"properties", props},
          {"property_count", results.size()},
          {"failed_properties", failed_props},
          {"cases", cases},
          {"cases_passed", passed}};
}

// ---------------------------------------------------------------- output

std::string scalar_text(const json& j) {
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    std::ostringstream s;
    s << std::setprecision(12) << j[0].get<double>() << (j[1].get<double>() < 0 ? " - " : " + ")
      << std::abs(j[1].get<double>()) << "i";
    return s.str();
  }
  if (j.is_number_float()) {
    std::ostringstream s;
    s << std::setprecision(12) << j.get<double>();
    return s.str();
  }
  return j.dump();
}

void print_text(const json& j, const std::string& indent, std::ostream& out) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    const json& v = it.value();
    const std::string key = j.is_object() ? it.key() : "-";
    if (v.is_object()) {
      out << indent << key << ":\n";
      print_text(v, indent + "  ", out);
    } else if (v.is_array() && !(v.size() == 2 && v[0].is_number())) {
      bool flat = std::all_of(v.begin(), v.end(), [](const json& e) {
        return e.is_number() || (e.is_array() && e.size() == 2 && e[0].is_number());
      });
      if (flat) {
        out << indent << key << ": [";
        for (size_t i = 0; i < v.size(); ++i) out << (i ? ", " : "") << scalar_text(v[i]);
        out << "]\n";
      } else {
        out << indent << key << ":\n";
        print_text(v, indent + "  ", out);
      }
    } else {
      out << indent << key << ": " << scalar_text(v) << "\n";
    }
  }
}

void print_evolve_table(const json& j, std::ostream& out) {
  out << std::setprecision(10);
  for (const auto& row : j.at("rows")) {
    out << row.at("t").get<double>();
    for (const auto& z : row.at("state")) out << '\t' << z[0].get<double>() << '\t' << z[1].get<double>();
    out << '\t' << row.at("norm_deviation").get<double>() << '\t' << row.at("ivp_residual").get<double>() << '\n';
  }
}

void print_check_table(const json& j, std::ostream& out) {
  for (const auto& p : j.at("properties")) {
    out << (p.at("ok").get<bool>() ? "PASS " : "FAIL ") << p.at("module").get<std::string>() << '/'
        << p.at("name").get<std::string>() << "  " << p.at("passed") << '/' << p.at("cases")
        << "  max_residual=" << scalar_text(p.at("max_residual")) << "  tol=" << scalar_text(p.at("tolerance"));
    if (p.contains("error")) out << "  error: " << p.at("error").get<std::string>();
    out << '\n';
  }
  out << j.at("property_count").get<int>() - j.at("failed_properties").get<int>() << '/' << j.at("property_count")
      << " properties passed, " << j.at("cases_passed") << '/' << j.at("cases") << " cases\n";
}

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::Parse: return 1;
    case ErrorKind::Precondition: return 2;
    case ErrorKind::Numerical: return 3;
  }
  return 3;
}

const char* kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::Parse: return "parse";
    case ErrorKind::Precondition: return "precondition";
    case ErrorKind::Numerical: return "numerical";
  }
  return "numerical";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stargebra: finite-dimensional *-algebra toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  double tol_flag = 0.0;
  auto* tol_opt = app.add_option("--tol", tol_flag, "Tolerance override")->check(CLI::PositiveNumber);
  app.add_option("--seed", o.seed, "Seed for randomised algorithms");
  app.add_option("--output", o.output, "Output format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--k", o.k, "Squaring depth for the spectral radius limit")->check(CLI::Range(0, 1000));

  std::string input, aux, op = "sqrt", times = "0:1:0.1";
  double mu = 0.0, scale = 1.0;

  auto* spectrum_cmd = app.add_subcommand("spectrum", "Spectrum, spectral radius and Ptak function of a matrix");
  spectrum_cmd->add_option("input", input, "Matrix JSON")->required();

  auto* calculus_cmd = app.add_subcommand("calculus", "Functional calculus on a matrix");
  calculus_cmd->add_option("input", input, "Matrix JSON")->required();
  calculus_cmd->add_option("--op", op, "sqrt | sqrt-series | abs | polar | orth | reflection | cayley | rational");
  calculus_cmd->add_option("--rational", aux, "Rational function JSON for --op rational");
  calculus_cmd->add_option("--mu", mu, "Bounded Cayley parameter (mu > spectral radius)");

  auto* gelfand_cmd = app.add_subcommand("gelfand", "Characters and Gelfand transforms of a commutative algebra");
  gelfand_cmd->add_option("input", input, "Algebra or group JSON")->required();

  auto* gns_cmd = app.add_subcommand("gns", "GNS construction for a positive functional");
  gns_cmd->add_option("input", input, "Algebra or group JSON")->required();
  gns_cmd->add_option("--functional", aux, "Functional JSON {\"F\": matrix}")->required();

  auto* decompose_cmd = app.add_subcommand("decompose", "Cyclic decomposition of the defining representation");
  decompose_cmd->add_option("input", input, "Algebra or group JSON")->required();

  auto* commutant_cmd = app.add_subcommand("commutant", "Commutant, bicommutant and W* dimensions of a set");
  commutant_cmd->add_option("input", input, "Algebra JSON; the generators form the set")->required();

  auto* resolve_cmd = app.add_subcommand("resolve", "Spectral resolution of a normal matrix");
  resolve_cmd->add_option("input", input, "Matrix JSON")->required();
  resolve_cmd->add_option("--vector", aux, "Vector JSON for the scalar measure <P x, x>");

  auto* evolve_cmd = app.add_subcommand("evolve", "Unitary evolution exp(-ita)x over a time grid");
  evolve_cmd->add_option("--a", input, "Hermitian matrix JSON")->required();
  evolve_cmd->add_option("--x", aux, "Initial vector JSON")->required();
  evolve_cmd->add_option("--times", times, "start:stop:step");

  auto* check_cmd = app.add_subcommand("check", "Run the randomised invariant suite");
  check_cmd->add_option("--scale", scale, "Case-count multiplier")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }
  if (*tol_opt) o.tol = tol_flag;

  json result;
  try {
    if (*spectrum_cmd) result = cmd_spectrum(input, o);
    else if (*calculus_cmd) result = cmd_calculus(input, op, aux, mu, o);
    else if (*gelfand_cmd) result = cmd_gelfand(input, o);
    else if (*gns_cmd) result = cmd_gns(input, aux, o);
    else if (*decompose_cmd) result = cmd_decompose(input, o);
    else if (*commutant_cmd) result = cmd_commutant(input, o);
    else if (*resolve_cmd) result = cmd_resolve(input, aux, o);
    else if (*evolve_cmd) result = cmd_evolve(input, aux, times, o);
    else if (*check_cmd) result = cmd_check(scale, o);
  } catch (const Error& e) {
    std::cerr << "error[" << kind_name(e.kind()) << "] " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const json::exception& e) {
    std::cerr << "error[parse] json: " << e.what() << '\n';
    return 1;
  }

  if (o.output == "json") {
    std::cout << result.dump(2) << '\n';
  } else if (*evolve_cmd) {
    print_evolve_table(result, std::cout);
  } else if (*check_cmd) {
    print_check_table(result, std::cout);
  } else {
    print_text(result, "", std::cout);
  }
  if (*check_cmd && result.at("failed_properties").get<int>() > 0) return 3;
  return 0;
}
