#include <doctest.h>

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qp1qc/cli.hpp"
#include "qp1qc/io.hpp"

using namespace qp1qc;
using nlohmann::json;

namespace {

std::string fixture(const char* name) {
  return std::string(QP1QC_FIXTURE_DIR) + "/" + name;
}

struct CliRun {
  int code;
  std::string out, err;
};

CliRun run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("solve exit codes follow the classification") {
  CHECK(run({"solve", fixture("ex53.json")}).code == 0);
  CHECK(run({"solve", fixture("ex52.json")}).code == 1);
  CHECK(run({"solve", fixture("ex51.json")}).code == 2);

  std::ofstream f("/tmp/qp1qc_infeasible.json");
  f << R"({"n": 1, "A": [1], "B": [1], "f": [0], "g": [0], "mu": -1})";
  f.close();
  CHECK(run({"solve", "/tmp/qp1qc_infeasible.json"}).code == 3);
}

TEST_CASE("solve --json emits a stable, re-parseable report") {
  const CliRun r = run({"solve", fixture("ex52.json"), "--json"});
  CHECK(r.code == 1);
  const json j = json::parse(r.out);
  CHECK(j["status"] == "unattained");
  CHECK(std::abs(j["value"].get<double>()) <= 1e-9);
  CHECK(std::abs(j["sigma_star"].get<double>()) <= 1e-9);
  CHECK(j["pencil"]["kind"] == "singleton");

  // round trip: serialize the parsed doc and parse again
  const json j2 = json::parse(j.dump());
  CHECK(j2["status"] == j["status"]);
  CHECK(j2["value"] == j["value"]);

  const CliRun r3 = run({"solve", fixture("ex53.json"), "--json", "--oracle"});
  CHECK(r3.code == 0);
  const json j3 = json::parse(r3.out);
  CHECK(j3["status"] == "attained");
  CHECK(j3["certificate"]["passed"] == true);
  CHECK(j3["oracle"]["agrees"] == true);
  CHECK(j3["x_star"].is_array());
}

TEST_CASE("unbounded report carries the ray") {
  const CliRun r = run({"solve", fixture("ex51.json"), "--json"});
  CHECK(r.code == 2);
  const json j = json::parse(r.out);
  CHECK(j["status"] == "unbounded");
  CHECK(j["value"].is_null());
  CHECK(j["ray"]["verified"] == true);
  CHECK(j["pencil"]["kind"] == "empty");
}

TEST_CASE("pencil and sdc subcommands") {
  const CliRun r = run({"pencil", fixture("ex31.json"), "--json"});
  CHECK(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["pencil"]["kind"] == "singleton");
  CHECK(std::abs(j["pencil"]["sigma"].get<double>()) <= 1e-9);
  CHECK(j["sdc"]["status"] == "not_sdc");

  const json jid = json::parse(run({"pencil", fixture("identity_pair.json"), "--json"}).out);
  CHECK(jid["pencil"]["kind"] == "interval");
  CHECK(jid["pencil"]["lo"].get<double>() == doctest::Approx(-1.0));
  CHECK(jid["pencil"]["hi"] == "+inf");

  const json jd = json::parse(run({"sdc", fixture("diag_pair.json"), "--json"}).out);
  CHECK(jd["status"] == "sdc");
}

TEST_CASE("malformed input exits 64 and names the key") {
  std::ofstream f("/tmp/qp1qc_bad.json");
  f << R"({"n": 2, "A": [1, 0, 0], "B": [0,0,0,0], "f": [0,0], "g": [0,0], "mu": 0})";
  f.close();
  const CliRun r = run({"solve", "/tmp/qp1qc_bad.json"});
  CHECK(r.code == 64);
  CHECK(r.err.find("A") != std::string::npos);

  std::ofstream f2("/tmp/qp1qc_asym.json");
  f2 << R"({"n": 2, "A": [1, 0.5, 0, 1], "B": [0,0,0,0], "f": [0,0], "g": [0,0], "mu": 0})";
  f2.close();
  CHECK(run({"solve", "/tmp/qp1qc_asym.json"}).code == 64);

  CHECK(run({"solve", "/tmp/qp1qc_does_not_exist.json"}).code == 64);
  CHECK(run({"bogus-subcommand"}).code == 64);
}

TEST_CASE("check subcommand runs a deterministic suite") {
  const CliRun r1 = run({"check", "--seed", "7", "--count", "12", "--n", "2"});
  CHECK(r1.code == 0);
  CHECK(r1.out.find("12/12 passed") != std::string::npos);
  const CliRun r2 = run({"check", "--seed", "7", "--count", "12", "--n", "2"});
  CHECK(r2.out == r1.out);
}

TEST_CASE("instance parser accepts nested rows") {
  const Qp1qcInstance inst =
      parse_instance_json(R"({"n":2,"A":[[1,0],[0,2]],"B":[[1,0],[0,1]],)"
                          R"("f":[0,0],"g":[0,0],"mu":1})");
  CHECK(inst.A(1, 1) == 2.0);
}
