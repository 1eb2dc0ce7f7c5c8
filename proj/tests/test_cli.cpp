#include "octoslice/cli.hpp"
#include "octoslice/dsl.hpp"
#include "support.hpp"

using namespace octoslice;
using namespace octoslice::units;
using octoslice::cli::json;

namespace {

cli::Response run(const std::string& command, const std::string& expr, json params, const std::string& format = "json") {
  cli::Request req;
  req.command = command;
  req.expr = expr;
  req.params = std::move(params);
  req.format = format;
  return cli::dispatch(req);
}

}  // namespace

TEST_CASE("octonion and expression JSON") {
  const Octonion x = parse_octonion("1-2j+0.25lk");
  CHECK(cli::octonion_from_json(cli::to_json(x)) == x);
  CHECK(cli::octonion_from_json(json("1-2j+0.25lk")) == x);
  CHECK(cli::octonion_from_json(json(3.5)) == Octonion(3.5));
  CHECK_THROWS_AS(cli::octonion_from_json(json::array({1, 2})), Error);

  testing::Rng rng(71);
  for (const char* text : {"x^2 + x*1i", "2*x*eta(-1i)", "N(conj(x) - [1+lj])^3", "d(x^4)*x^-1"}) {
    const SliceExpr e = parse_expr(text);
    const json doc = cli::expr_to_json(e);
    CHECK(structurally_equal(cli::expr_from_json(json::parse(doc.dump())), e));
  }
}

TEST_CASE("request parsing") {
  const cli::Request req = cli::request_from_json(json::parse(R"({"command": "diff", "expr": "x^2", "at": "1i"})"));
  CHECK(req.command == "diff");
  CHECK(req.expr == "x^2");
  CHECK(req.params.at("at") == "1i");
  CHECK(req.format == "json");
}

TEST_CASE("dispatch examples") {
  const cli::Response fiber = run("fiber", "x^2", {{"target", "-1"}});
  CHECK(fiber.exit_code == 0);
  const json f = json::parse(fiber.output);
  REQUIRE(f.at("components").size() == 1);
  CHECK(f["components"][0]["kind"] == "sphere");
  CHECK(f["components"][0]["alpha"].get<double>() == doctest::Approx(0.0).scale(1.0));
  CHECK(f["components"][0]["beta"].get<double>() == doctest::Approx(1.0));

  const cli::Response diff = run("diff", "x^2", {{"at", "1i"}});
  CHECK(diff.exit_code == 0);
  const json d = json::parse(diff.output);
  CHECK(d["report"]["singular"] == true);
  CHECK(d["report"]["rank_class"] == "Plane");
  CHECK(d["jacobian"].size() == 8);

  const json e = json::parse(run("eval", "x^2", {{"at", "2+3i"}}).output);
  CHECK(cli::octonion_from_json(e["value"]) == parse_octonion("-5+12i"));
}

TEST_CASE("structures through dispatch") {
  const json std_doc = json::parse(run("structure", "", {{"kind", "standard"}, {"at", "2+3i"}}).output);
  CHECK(std_doc["structure"]["dimension"] == 8);
  CHECK(std_doc["structure"]["orthogonal"] == true);
  const json phi = json::parse(run("structure", "", {{"kind", "phi3"}, {"xi", "1,0,0.5,0.5,0,-1"}}).output);
  CHECK(phi["structure"]["dimension"] == 6);
  CHECK(phi["structure"]["squares_to_minus_identity"] == true);
  const json ind = json::parse(run("structure", "x^2*1j + x*1l", {{"kind", "induced"}, {"at", "0.5+i"}}).output);
  CHECK(ind["report"]["orthogonal"] == false);
}

TEST_CASE("wing output formats") {
  const json params = {{"target", "0"}, {"resolution", "4x3"}};
  const cli::Response js = run("wing", "2*x*eta(-1i)", params);
  CHECK(js.exit_code == 0);
  CHECK(json::parse(js.output)["samples"].size() == 12);

  const cli::Response csv = run("wing", "2*x*eta(-1i)", params, "csv");
  CHECK(csv.output.rfind("alpha,beta,x0,x1,x2,x3,x4,x5,x6,x7,residual\n", 0) == 0);
  CHECK(std::count(csv.output.begin(), csv.output.end(), '\n') == 13);

  const cli::Response cloud = run("wing", "2*x*eta(-1i)", params, "pointcloud");
  CHECK(std::count(cloud.output.begin(), cloud.output.end(), '\n') == 12);

  CHECK(run("wing", "x^2", {{"target", "1"}}).exit_code == 3);
}

TEST_CASE("errors and exit codes") {
  const cli::Response bad = run("eval", "x + y", {{"at", "1"}});
  CHECK(bad.exit_code == 2);
  const json err = json::parse(bad.output);
  CHECK(err["error"]["kind"] == "UnknownToken");
  CHECK(err["error"]["span"][0] == 4);
  CHECK(bad.diagnostics.find('^') != std::string::npos);

  CHECK(run("eval", "x", {{"at", "1+2q"}}).exit_code == 2);
  CHECK(run("frobnicate", "x", json::object()).exit_code == 2);
  const cli::Response domain = run("eval", "eta(1i)", {{"at", "2"}});
  CHECK(domain.exit_code == 3);
  CHECK(json::parse(domain.output)["error"]["kind"] == "DomainError");
  CHECK(run("fiber", "2*x*eta(-1i)", {{"target", "0"}}).exit_code == 3);
}
