#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "octoslice/cli.hpp"

namespace {

using octoslice::cli::json;
using octoslice::cli::Request;
using octoslice::cli::Response;

struct Flags {
  std::string expr;
  std::map<std::string, std::string> params;
  std::string format = "json";
  std::uint64_t seed = 0;
  double tolerance = 0.0;
};

CLI::App* add_command(CLI::App& app, Flags& flags, const std::string& name, const std::string& help,
                      std::initializer_list<const char*> keys) {
  CLI::App* sub = app.add_subcommand(name, help);
  sub->add_option("--expr", flags.expr, "function in the expression language");
  for (const char* key : keys) sub->add_option(std::string("--") + key, flags.params[key]);
  sub->add_option("--format", flags.format, "json, csv or pointcloud")->capture_default_str();
  sub->add_option("--seed", flags.seed, "seed for randomized suites")->capture_default_str();
  sub->add_option("--tolerance", flags.tolerance, "acceptance threshold override");
  return sub;
}

int emit(const Response& r) {
  std::cout << r.output;
  if (!r.diagnostics.empty()) std::cerr << r.diagnostics;
  return r.exit_code;
}

int run_batch() {
  int status = 0;
  std::string line;
  while (std::getline(std::cin, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    Response r;
    try {
      const Request req = octoslice::cli::request_from_json(json::parse(line));
      r = octoslice::cli::dispatch(req);
    } catch (const json::exception& err) {
      r.exit_code = 2;
      r.output = octoslice::cli::error_json(octoslice::Error(octoslice::ErrorKind::SyntaxError, err.what()), "batch")
                     .dump();
    } catch (const octoslice::Error& err) {
      r.exit_code = 2;
      r.output = octoslice::cli::error_json(err, "batch").dump();
    }
    // One compact document per request line.
    std::string out = r.output;
    try {
      const json parsed = json::parse(out);
      out = parsed.dump();
    } catch (const json::exception&) {
      while (!out.empty() && out.back() == '\n') out.pop_back();
      out = json(out).dump();
    }
    std::cout << out << '\n';
    if (!r.diagnostics.empty()) std::cerr << r.diagnostics;
    if (r.exit_code != 0 && status == 0) status = r.exit_code;
  }
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Octonionic slice regular functions: evaluation, differentials, fibers, wings and structures"};
  app.require_subcommand(1);
  Flags flags;
  std::vector<std::pair<std::string, CLI::App*>> commands = {
      {"eval", add_command(app, flags, "eval", "evaluate f at a point", {"at"})},
      {"diff", add_command(app, flags, "diff", "differential report at a point", {"at"})},
      {"singular-scan", add_command(app, flags, "singular-scan", "locate singular points in a region",
                                    {"box", "resolution"})},
      {"fiber", add_command(app, flags, "fiber", "components of the preimage of a target",
                            {"target", "box", "resolution"})},
      {"wing", add_command(app, flags, "wing", "sample the wing over a target",
                           {"target", "unit", "box", "resolution"})},
      {"structure", add_command(app, flags, "structure", "constant or induced complex structures",
                                {"kind", "at", "unit", "xi"})},
      {"check", add_command(app, flags, "check", "run the verification suites", {})},
  };
  app.add_subcommand("batch", "read JSON requests from stdin, one per line");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    return app.exit(err);
  }
  if (app.got_subcommand("batch")) return run_batch();

  for (const auto& [name, sub] : commands) {
    if (!sub->parsed()) continue;
    Request req;
    req.command = name;
    req.expr = flags.expr;
    req.format = flags.format;
    req.seed = flags.seed;
    if (sub->count("--tolerance") > 0) req.tolerance = flags.tolerance;
    for (const auto& [key, value] : flags.params) {
      if (sub->get_option_no_throw("--" + key) != nullptr && sub->count("--" + key) > 0) req.params[key] = value;
    }
    return emit(octoslice::cli::dispatch(req));
  }
  return 2;
}
