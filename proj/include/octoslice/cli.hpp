#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "json.hpp"
#include "octoslice/differential.hpp"
#include "octoslice/error.hpp"
#include "octoslice/fibers.hpp"
#include "octoslice/structures.hpp"

namespace octoslice::cli {

using nlohmann::json;

/// Array of 8 reals in standard basis order.
json to_json(const Octonion& x);
/// Accepts an array of 8 numbers or an octonion literal string.
Octonion octonion_from_json(const json& j);

/// Tree form: {"kind": ..., children or payload}.
json expr_to_json(const SliceExpr& e);
SliceExpr expr_from_json(const json& j);

json to_json(const DifferentialReport& r);
json to_json(const SingularPoint& p);
json to_json(const FiberComponent& c);
json to_json(const LinearStructure& s);
json to_json(const InducedStructureReport& r);

/// Accepts {basis_dirs, center, half_widths, counts} with octonions as
/// literals or arrays.
ScanRegion region_from_json(const json& j);

/// One command. `params` holds the command-specific keys (at, target, box,
/// resolution, unit, kind, xi); string values are parsed lazily.
struct Request {
  std::string command;
  std::string expr;
  json params = json::object();
  std::string format = "json";
  std::uint64_t seed = 0;
  std::optional<double> tolerance;
};

/// Builds a request from a batch line such as
/// {"command": "diff", "expr": "x^2", "at": "1i"}.
Request request_from_json(const json& j);

struct Response {
  int exit_code = 0;
  /// Document for stdout, newline terminated.
  std::string output;
  /// Diagnostics for stderr (possibly empty).
  std::string diagnostics;
};

/// Exit codes: 0 success, 1 a verification suite failed, 2 malformed input,
/// 3 a computational error.
Response dispatch(const Request& req);

/// {"error": {"kind", "message", "input", "span"}}.
json error_json(const Error& err, const std::string& input_name = "");

}  // namespace octoslice::cli
