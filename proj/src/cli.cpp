#include "octoslice/cli.hpp"

#include <cstdio>
#include <sstream>

#include "octoslice/dsl.hpp"
#include "octoslice/suites.hpp"

namespace octoslice::cli {

namespace {

/// A module error tagged with the request field it came from.
struct FieldError {
  Error error;
  std::string field;
};

template <class F>
auto in_field(const std::string& field, F&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const Error& err) {
    throw FieldError{err, field};
  }
}

std::string number9(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

std::string number17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

json matrix_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(row);
  }
  return rows;
}

const json& required(const Request& req, const std::string& key) {
  if (!req.params.contains(key) || req.params.at(key).is_null()) {
    throw FieldError{Error(ErrorKind::InvalidArgument, "missing --" + key), key};
  }
  return req.params.at(key);
}

std::optional<json> optional_param(const Request& req, const std::string& key) {
  if (!req.params.contains(key) || req.params.at(key).is_null()) return std::nullopt;
  return req.params.at(key);
}

Octonion octonion_param(const Request& req, const std::string& key) {
  const json& j = required(req, key);
  return in_field(key, [&] { return octonion_from_json(j); });
}

/// A JSON value given on the command line as text.
json structured_param(const json& j, const std::string& key) {
  if (!j.is_string()) return j;
  try {
    return json::parse(j.get<std::string>());
  } catch (const json::parse_error& err) {
    throw FieldError{Error(ErrorKind::SyntaxError, std::string("invalid JSON: ") + err.what(),
                           Span{err.byte > 0 ? err.byte - 1 : 0, err.byte}),
                     key};
  }
}

std::vector<int> resolution_param(const json& j) {
  std::vector<int> counts;
  if (j.is_array()) {
    for (const json& v : j) counts.push_back(v.get<int>());
    return counts;
  }
  const std::string text = j.get<std::string>();
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t next = std::min(text.find('x', pos), text.size());
    const std::string part = text.substr(pos, next - pos);
    std::size_t used = 0;
    int n = 0;
    try {
      n = std::stoi(part, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != part.size() || n < 1) {
      throw FieldError{Error(ErrorKind::SyntaxError, "resolution must look like 10x10", Span{pos, next}),
                       "resolution"};
    }
    counts.push_back(n);
    pos = next + 1;
  }
  return counts;
}

std::pair<double, double> interval(const json& box, const char* key, std::pair<double, double> fallback) {
  if (!box.contains(key)) return fallback;
  const json& v = box.at(key);
  if (!v.is_array() || v.size() != 2) {
    throw FieldError{Error(ErrorKind::InvalidArgument, std::string(key) + " must be [lo, hi]"), "box"};
  }
  return {v[0].get<double>(), v[1].get<double>()};
}

SliceExpr request_expr(const Request& req) {
  if (req.expr.empty()) throw FieldError{Error(ErrorKind::InvalidArgument, "missing --expr"), "expr"};
  return in_field("expr", [&] { return parse_expr(req.expr); });
}

json base_document(const Request& req) {
  json doc;
  doc["command"] = req.command;
  if (!req.expr.empty()) doc["expr"] = req.expr;
  return doc;
}

std::string finish(const json& doc) { return doc.dump(2) + "\n"; }

Response cmd_eval(const Request& req) {
  const SliceExpr e = request_expr(req);
  const Octonion x = octonion_param(req, "at");
  json doc = base_document(req);
  doc["at"] = to_json(x);
  doc["value"] = to_json(in_field("at", [&] { return eval(e, x); }));
  return {0, finish(doc), ""};
}

Response cmd_diff(const Request& req) {
  const SliceExpr e = request_expr(req);
  const Octonion x = octonion_param(req, "at");
  json doc = base_document(req);
  doc["report"] = to_json(in_field("at", [&] { return differential_report(e, x); }));
  doc["jacobian"] = matrix_json(in_field("at", [&] { return Eigen::MatrixXd(jacobian_matrix(e, x)); }));
  return {0, finish(doc), ""};
}

Response cmd_singular_scan(const Request& req) {
  const SliceExpr e = request_expr(req);
  ScanRegion region = in_field("box", [&] { return region_from_json(structured_param(required(req, "box"), "box")); });
  if (const auto res = optional_param(req, "resolution")) {
    region.counts = resolution_param(*res);
  }
  if (req.tolerance) region.accept_det = *req.tolerance;
  const auto points = scan_singular_set(e, region);
  json list = json::array();
  for (const SingularPoint& p : points) list.push_back(to_json(p));
  return {0, finish(list), ""};
}

FiberSearch search_from(const Request& req) {
  FiberSearch search;
  if (const auto box = optional_param(req, "box")) {
    const json b = structured_param(*box, "box");
    std::tie(search.alpha_min, search.alpha_max) = interval(b, "alpha", {search.alpha_min, search.alpha_max});
    std::tie(search.beta_min, search.beta_max) = interval(b, "beta", {search.beta_min, search.beta_max});
  }
  if (const auto res = optional_param(req, "resolution")) {
    const auto counts = resolution_param(*res);
    if (counts.size() != 2) throw FieldError{Error(ErrorKind::InvalidArgument, "resolution needs two counts"), "resolution"};
    search.seeds_alpha = counts[0];
    search.seeds_beta = counts[1];
  }
  return search;
}

Response cmd_fiber(const Request& req) {
  const SliceExpr e = request_expr(req);
  const Octonion c = octonion_param(req, "target");
  const FiberResult result = solve_fiber(e, c, search_from(req));
  json doc = base_document(req);
  doc["target"] = to_json(c);
  doc["components"] = json::array();
  double worst = 0.0;
  for (const FiberComponent& comp : result.components) {
    doc["components"].push_back(to_json(comp));
    worst = std::max(worst, comp.residual);
  }
  doc["residuals"] = {{"max", worst}};
  doc["nonconverged_seeds"] = result.nonconverged_seeds;
  return {0, finish(doc), ""};
}

Response cmd_wing(const Request& req) {
  const SliceExpr e = request_expr(req);
  const Octonion c = octonion_param(req, "target");
  const ImaginaryUnit unit = optional_param(req, "unit")
                                 ? in_field("unit", [&] { return ImaginaryUnit(octonion_param(req, "unit")); })
                                 : ImaginaryUnit();
  std::pair<double, double> alpha{-1.0, 1.0};
  std::pair<double, double> beta{0.1, 2.0};
  if (const auto box = optional_param(req, "box")) {
    const json b = structured_param(*box, "box");
    alpha = interval(b, "alpha", alpha);
    beta = interval(b, "beta", beta);
  }
  std::vector<int> counts{10, 10};
  if (const auto res = optional_param(req, "resolution")) counts = resolution_param(*res);
  if (counts.size() != 2) throw FieldError{Error(ErrorKind::InvalidArgument, "resolution needs two counts"), "resolution"};
  if (!(beta.first > 0.0)) throw FieldError{Error(ErrorKind::DomainError, "wing samples need beta > 0"), "box"};
  if (!detect_wing(e, c)) throw Error(ErrorKind::DomainError, "no wing: N(f - c) does not vanish identically");

  struct Sample {
    double alpha, beta;
    Octonion point;
    double residual;
  };
  std::vector<Sample> samples;
  const auto at = [](std::pair<double, double> range, int n, int t) {
    return n == 1 ? 0.5 * (range.first + range.second)
                  : range.first + (range.second - range.first) * t / (n - 1);
  };
  double worst = 0.0;
  for (int a = 0; a < counts[0]; ++a) {
    for (int b = 0; b < counts[1]; ++b) {
      const double al = at(alpha, counts[0], a);
      const double be = at(beta, counts[1], b);
      const Octonion w = wing_parametrization(e, c, unit, {al, be});
      const double res = (eval(e, w) - c).abs();
      worst = std::max(worst, res);
      samples.push_back({al, be, w, res});
    }
  }
  std::ostringstream out;
  if (req.format == "pointcloud") {
    for (const Sample& s : samples) {
      out << number17(s.alpha) << ' ' << number17(s.beta);
      for (std::size_t t = 0; t < 8; ++t) out << ' ' << number17(s.point[t]);
      out << '\n';
    }
  } else if (req.format == "csv") {
    out << "alpha,beta,x0,x1,x2,x3,x4,x5,x6,x7,residual\n";
    for (const Sample& s : samples) {
      out << number9(s.alpha) << ',' << number9(s.beta);
      for (std::size_t t = 0; t < 8; ++t) out << ',' << number9(s.point[t]);
      out << ',' << number9(s.residual) << '\n';
    }
  } else {
    json doc = base_document(req);
    doc["target"] = to_json(c);
    doc["base_unit"] = to_json(unit.value());
    doc["samples"] = json::array();
    for (const Sample& s : samples) {
      doc["samples"].push_back({{"z", {s.alpha, s.beta}}, {"point", to_json(s.point)}, {"residual", s.residual}});
    }
    doc["residuals"] = {{"max", worst}};
    out << finish(doc);
  }
  return {0, out.str(), ""};
}

std::vector<double> xi_values(const Request& req, std::size_t count) {
  std::vector<double> values;
  const json& j = required(req, "xi");
  if (j.is_array()) {
    for (const json& v : j) values.push_back(v.get<double>());
  } else {
    std::stringstream ss(j.get<std::string>());
    std::string part;
    while (std::getline(ss, part, ',')) {
      try {
        values.push_back(std::stod(part));
      } catch (const std::exception&) {
        throw FieldError{Error(ErrorKind::SyntaxError, "xi must be comma separated reals"), "xi"};
      }
    }
  }
  if (values.size() != count) {
    throw FieldError{Error(ErrorKind::InvalidArgument, "xi needs " + std::to_string(count) + " reals"), "xi"};
  }
  return values;
}

Response cmd_structure(const Request& req) {
  const std::string kind = required(req, "kind").get<std::string>();
  json doc = base_document(req);
  doc["kind"] = kind;
  if (kind == "induced") {
    const SliceExpr e = request_expr(req);
    const Octonion x = octonion_param(req, "at");
    doc["report"] = to_json(in_field("at", [&] { return induced_structure(e, x); }));
    return {0, finish(doc), ""};
  }
  LinearStructure s;
  if (kind == "standard") {
    const Octonion x = octonion_param(req, "at");
    s = in_field("at", [&] { return standard_structure_at(x); });
  } else if (kind == "phi2") {
    const auto v = xi_values(req, 2);
    s = phi2({v[0], v[1]});
  } else if (kind == "phi3") {
    const auto v = xi_values(req, 6);
    s = phi3({v[0], v[1]}, {v[2], v[3]}, {v[4], v[5]});
  } else if (kind == "conjugated-L" || kind == "conjugated-R" || kind == "conjugated-R-root") {
    const ImaginaryUnit unit = in_field("unit", [&] { return ImaginaryUnit(octonion_param(req, "unit")); });
    const Octonion p = octonion_param(req, "at");
    if (kind == "conjugated-L") {
      s = conjugated_structure_L(unit, p);
    } else if (kind == "conjugated-R") {
      s = conjugated_structure_R(unit, p);
    } else {
      s = conjugated_structure_R_via_root(unit, p);
    }
  } else {
    throw FieldError{Error(ErrorKind::InvalidArgument, "unknown structure kind '" + kind + "'"), "kind"};
  }
  doc["structure"] = to_json(s);
  return {0, finish(doc), ""};
}

Response cmd_check(const Request& req) {
  const auto results = run_all_criteria(req.seed);
  bool all = true;
  for (const CriterionResult& r : results) all = all && r.passed;
  std::ostringstream out;
  if (req.format == "csv") {
    out << "id,name,passed,residual,tolerance,detail\n";
    for (const CriterionResult& r : results) {
      out << r.id << ",\"" << r.name << "\"," << (r.passed ? "pass" : "FAIL") << ',' << number9(r.residual) << ','
          << number9(r.tolerance) << ",\"" << r.detail << "\"\n";
    }
  } else {
    json doc;
    doc["command"] = "check";
    doc["seed"] = req.seed;
    doc["passed"] = all;
    doc["criteria"] = json::array();
    for (const CriterionResult& r : results) {
      doc["criteria"].push_back({{"id", r.id},
                                 {"name", r.name},
                                 {"passed", r.passed},
                                 {"residual", r.residual},
                                 {"tolerance", r.tolerance},
                                 {"detail", r.detail}});
    }
    out << finish(doc);
  }
  return {all ? 0 : 1, out.str(), ""};
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::SyntaxError:
    case ErrorKind::UnknownToken:
    case ErrorKind::InvalidArgument:
      return 2;
    default:
      return 3;
  }
}

Response error_response(const Error& err, const std::string& field, const Request& req) {
  Response r;
  r.exit_code = exit_code_for(err.kind());
  r.output = error_json(err, field).dump(2) + "\n";
  if (err.span()) {
    std::string text;
    if (field == "expr") {
      text = req.expr;
    } else if (req.params.contains(field) && req.params.at(field).is_string()) {
      text = req.params.at(field).get<std::string>();
    }
    if (!text.empty()) r.diagnostics = caret_line(text, err.span()->begin, err.span()->end) + "\n";
  }
  return r;
}

}  // namespace

json to_json(const Octonion& x) {
  json a = json::array();
  for (std::size_t t = 0; t < 8; ++t) a.push_back(x[t]);
  return a;
}

Octonion octonion_from_json(const json& j) {
  if (j.is_string()) return parse_octonion(j.get<std::string>());
  if (j.is_number()) return Octonion(j.get<double>());
  if (!j.is_array() || j.size() != 8) throw Error(ErrorKind::InvalidArgument, "octonion must be 8 reals or a literal");
  Octonion x;
  for (std::size_t t = 0; t < 8; ++t) {
    if (!j[t].is_number()) throw Error(ErrorKind::InvalidArgument, "octonion entries must be numbers");
    x[t] = j[t].get<double>();
  }
  return x;
}

json expr_to_json(const SliceExpr& e) {
  using K = SliceExpr::Kind;
  switch (e.kind()) {
    case K::Variable: return {{"kind", "variable"}};
    case K::Const: return {{"kind", "const"}, {"value", to_json(e.value())}};
    case K::Eta: return {{"kind", "eta"}, {"unit", to_json(e.value())}};
    case K::Add: return {{"kind", "add"}, {"lhs", expr_to_json(e.lhs())}, {"rhs", expr_to_json(e.rhs())}};
    case K::Sub: return {{"kind", "sub"}, {"lhs", expr_to_json(e.lhs())}, {"rhs", expr_to_json(e.rhs())}};
    case K::SliceMul: return {{"kind", "mul"}, {"lhs", expr_to_json(e.lhs())}, {"rhs", expr_to_json(e.rhs())}};
    case K::Conj: return {{"kind", "conj"}, {"arg", expr_to_json(e.lhs())}};
    case K::Normal: return {{"kind", "normal"}, {"arg", expr_to_json(e.lhs())}};
    case K::Pow: return {{"kind", "pow"}, {"base", expr_to_json(e.lhs())}, {"exponent", e.exponent()}};
    case K::CDeriv: return {{"kind", "cderiv"}, {"arg", expr_to_json(e.lhs())}};
  }
  return {};
}

SliceExpr expr_from_json(const json& j) {
  if (j.is_string()) return parse_expr(j.get<std::string>());
  if (!j.is_object() || !j.contains("kind")) throw Error(ErrorKind::InvalidArgument, "expression node needs a kind");
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "variable") return SliceExpr::variable();
  if (kind == "const") return SliceExpr::constant(octonion_from_json(j.at("value")));
  if (kind == "eta") return SliceExpr::eta(ImaginaryUnit(octonion_from_json(j.at("unit"))));
  if (kind == "add") return SliceExpr::add(expr_from_json(j.at("lhs")), expr_from_json(j.at("rhs")));
  if (kind == "sub") return SliceExpr::sub(expr_from_json(j.at("lhs")), expr_from_json(j.at("rhs")));
  if (kind == "mul") return SliceExpr::mul(expr_from_json(j.at("lhs")), expr_from_json(j.at("rhs")));
  if (kind == "conj") return SliceExpr::conjugate(expr_from_json(j.at("arg")));
  if (kind == "normal") return SliceExpr::normal(expr_from_json(j.at("arg")));
  if (kind == "pow") return SliceExpr::pow(expr_from_json(j.at("base")), j.at("exponent").get<int>());
  if (kind == "cderiv") return SliceExpr::cderiv(expr_from_json(j.at("arg")));
  throw Error(ErrorKind::UnknownToken, "unknown expression kind '" + kind + "'");
}

json to_json(const DifferentialReport& r) {
  return {{"point", to_json(r.point)},
          {"cderiv", to_json(r.cderiv)},
          {"sderiv", r.sderiv ? to_json(*r.sderiv) : json(nullptr)},
          {"rank_class", std::string(to_string(r.rank_class))},
          {"rank", rank_of(r.rank_class)},
          {"det", r.det},
          {"det_tolerance", r.det_tolerance},
          {"singular", r.singular}};
}

json to_json(const SingularPoint& p) {
  return {{"point", to_json(p.point)},
          {"det", p.det},
          {"cderiv", to_json(p.cderiv)},
          {"sderiv", p.sderiv ? to_json(*p.sderiv) : json(nullptr)}};
}

json to_json(const FiberComponent& c) {
  switch (c.kind) {
    case FiberComponent::Kind::Point:
      return {{"kind", "point"},
              {"point", to_json(c.point)},
              {"total_multiplicity", c.total_multiplicity},
              {"residual", c.residual}};
    case FiberComponent::Kind::Sphere:
      return {{"kind", "sphere"}, {"alpha", c.alpha}, {"beta", c.beta}, {"residual", c.residual}};
    case FiberComponent::Kind::WingSample: {
      json pts = json::array();
      for (const Octonion& x : c.samples) pts.push_back(to_json(x));
      return {{"kind", "wing_samples"}, {"points", pts}, {"residual", c.residual}};
    }
  }
  return {};
}

json to_json(const LinearStructure& s) {
  json doc = {{"dimension", s.dimension()},
              {"matrix", matrix_json(s.matrix)},
              {"squares_to_minus_identity", s.squares_to_minus_identity()},
              {"orthogonal", s.is_orthogonal()}};
  if (is_orthogonal_complex_structure(s.matrix)) {
    const Eigen::MatrixXd skew = 0.5 * (s.matrix - s.matrix.transpose());
    doc["pfaffian"] = pfaffian(skew, 1e-6);
    doc["pfaffian_sign_vs_Li"] = induces_standard_orientation(s.matrix) ? 1 : -1;
  }
  return doc;
}

json to_json(const InducedStructureReport& r) {
  return {{"base_point", to_json(r.base_point)},
          {"structure", to_json(r.structure)},
          {"orthogonal", r.orthogonal},
          {"matrix_orthogonal", r.matrix_orthogonal},
          {"associator_norm", r.associator_norm},
          {"commutation_residual", r.commutation_residual},
          {"differential_norm", r.differential_norm}};
}

ScanRegion region_from_json(const json& j) {
  if (!j.is_object()) throw Error(ErrorKind::InvalidArgument, "region must be a JSON object");
  ScanRegion region;
  for (const char* key : {"basis_dirs", "center", "half_widths", "counts"}) {
    if (!j.contains(key)) throw Error(ErrorKind::InvalidArgument, std::string("region is missing ") + key);
  }
  try {
    for (const json& d : j.at("basis_dirs")) region.basis_dirs.push_back(octonion_from_json(d));
    region.center = octonion_from_json(j.at("center"));
    for (const json& w : j.at("half_widths")) region.half_widths.push_back(w.get<double>());
    for (const json& c : j.at("counts")) region.counts.push_back(c.get<int>());
  } catch (const json::exception& err) {
    throw Error(ErrorKind::InvalidArgument, std::string("malformed region: ") + err.what());
  }
  return region;
}

Request request_from_json(const json& j) {
  if (!j.is_object() || !j.contains("command") || !j.at("command").is_string()) {
    throw Error(ErrorKind::InvalidArgument, "request needs a \"command\" string");
  }
  Request req;
  req.command = j.at("command").get<std::string>();
  if (j.contains("expr")) {
    const json& e = j.at("expr");
    req.expr = e.is_string() ? e.get<std::string>() : render_expr(expr_from_json(e));
  }
  if (j.contains("format")) req.format = j.at("format").get<std::string>();
  if (j.contains("seed")) req.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("tolerance")) req.tolerance = j.at("tolerance").get<double>();
  for (const auto& [key, value] : j.items()) {
    if (key != "command" && key != "expr" && key != "format" && key != "seed" && key != "tolerance") {
      req.params[key] = value;
    }
  }
  return req;
}

Response dispatch(const Request& req) {
  try {
    try {
      if (req.format != "json" && req.format != "csv" && req.format != "pointcloud") {
        throw FieldError{Error(ErrorKind::InvalidArgument, "format must be json, csv or pointcloud"), "format"};
      }
      if (req.command == "eval") return cmd_eval(req);
      if (req.command == "diff") return cmd_diff(req);
      if (req.command == "singular-scan") return cmd_singular_scan(req);
      if (req.command == "fiber") return cmd_fiber(req);
      if (req.command == "wing") return cmd_wing(req);
      if (req.command == "structure") return cmd_structure(req);
      if (req.command == "check") return cmd_check(req);
      throw FieldError{Error(ErrorKind::InvalidArgument, "unknown command '" + req.command + "'"), "command"};
    } catch (const json::exception& err) {
      throw FieldError{Error(ErrorKind::InvalidArgument, err.what()), ""};
    }
  } catch (const FieldError& fe) {
    return error_response(fe.error, fe.field, req);
  } catch (const Error& err) {
    return error_response(err, "", req);
  }
}

json error_json(const Error& err, const std::string& input_name) {
  json body = {{"kind", std::string(to_string(err.kind()))}, {"message", err.what()}};
  body["input"] = input_name.empty() ? json(nullptr) : json(input_name);
  body["span"] = err.span() ? json::array({err.span()->begin, err.span()->end}) : json(nullptr);
  return {{"error", body}};
}

}  // namespace octoslice::cli
