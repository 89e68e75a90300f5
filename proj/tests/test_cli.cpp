#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "zpart/cli.hpp"
#include "zpart/estimator.hpp"
#include "zpart/io.hpp"

using namespace zpart;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path scratch() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("zpart_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string write_file(const std::string& name, const std::string& text) {
  const fs::path p = scratch() / name;
  std::ofstream(p) << text;
  return p.string();
}

std::string instance_file(const std::string& name, const PartitionInstance& inst) {
  const fs::path p = scratch() / name;
  save_instance(p.string(), InstanceFile{inst, std::nullopt, "test"});
  return p.string();
}

int run_args(std::vector<std::string> args, json* payload = nullptr, std::string* text = nullptr) {
  args.insert(args.begin(), "zpart");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  if (payload) *payload = json::parse(out.str());
  if (text) *text = out.str();
  return code;
}

int run_binary(const std::string& args) {
  const std::string cmd = std::string(ZPART_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

void check_envelope(const cli::CommandResult& r, const std::string& command) {
  CHECK(r.payload["schema_version"] == cli::kSchemaVersion);
  CHECK(r.payload["command"] == command);
  CHECK(r.payload["status"] == cli::to_string(r.status));
}

json without_timings(json j) {
  if (j.is_object()) {
    json out = json::object();
    for (auto& [k, v] : j.items()) {
      if (k != "elapsed_ms" && k != "ms") out[k] = without_timings(v);
    }
    return out;
  }
  if (j.is_array()) {
    json out = json::array();
    for (auto& v : j) out.push_back(without_timings(v));
    return out;
  }
  return j;
}

const char* kOr3 = "p cnf 3 1\n1 2 3 0\n";
const char* kContradiction = "p cnf 1 2\n1 0\n-1 0\n";

}  // namespace

TEST_CASE("exit codes") {
  CHECK(cli::exit_code(cli::Status::Ok) == 0);
  CHECK(cli::exit_code(cli::Status::Error) == 1);
  CHECK(cli::exit_code(cli::Status::Certified) == 2);
  CHECK(cli::exit_code(cli::Status::Counterexample) == 3);
}

TEST_CASE("count with every method") {
  const auto r = cli::cmd_count(instance_file("a.json", {1, 2, 3}), "all");
  check_envelope(r, "count");
  CHECK(r.status == cli::Status::Ok);
  CHECK(r.payload["count"] == "2");
  CHECK(r.payload["agree"] == true);
  for (const char* m : {"oracle", "dp", "residue", "quadrature", "modular"}) {
    CHECK(r.payload["methods"][m]["count"] == "2");
    CHECK(r.payload["methods"][m]["ms"].is_number());
  }
}

TEST_CASE("count with one method and guard skips") {
  const auto r = cli::cmd_count(instance_file("five.json", {5}), "modular");
  CHECK(r.status == cli::Status::Ok);
  CHECK(r.payload["count"] == "0");
  CHECK(r.payload["methods"].size() == 1);

  Limits lim;
  lim.oracle_max_n = 2;
  const auto s = cli::cmd_count(instance_file("a3.json", {1, 2, 3}), "all", lim);
  CHECK(s.status == cli::Status::Ok);
  CHECK(s.payload["methods"]["oracle"].contains("skipped"));
  CHECK(s.payload["count"] == "2");

  const auto t = cli::cmd_count(instance_file("a4.json", {1, 2, 3}), "oracle", lim);
  CHECK(t.status == cli::Status::Error);
  CHECK(t.exit_code() == 1);
}

TEST_CASE("count errors") {
  const auto r = cli::cmd_count((scratch() / "missing.json").string(), "all");
  CHECK(r.status == cli::Status::Error);
  CHECK(r.exit_code() != 0);
  CHECK(r.payload.contains("error"));
  CHECK(cli::cmd_count(instance_file("b.json", {1}), "bogus").status == cli::Status::Error);
  CHECK(cli::cmd_count(write_file("bad.json", "{\"numbers\": [1, \"x\"]}"), "all").status == cli::Status::Error);
}

TEST_CASE("spectrum") {
  const auto r = cli::cmd_spectrum(instance_file("s.json", {1, 1}));
  CHECK(r.status == cli::Status::Ok);
  CHECK(r.payload["subset_sums"] == json{{"0", "1"}, {"1", "2"}, {"2", "1"}});
  CHECK(r.payload["zero_partitions"] == "2");
  CHECK(r.payload["offset_bits"] == "4");
}

TEST_CASE("stats") {
  const std::string path = instance_file("st.json", {1, 2, 3});
  const auto r = cli::cmd_stats(path, 3, std::make_pair(std::size_t{0}, std::size_t{1}));
  CHECK(r.status == cli::Status::Ok);
  CHECK(r.payload["variance"]["sum_squares"] == "14");
  CHECK(r.payload["variance"]["agree"] == true);
  CHECK(r.payload["correlation"]["sign_sum"] == "2");
  CHECK(r.payload["correlation"]["brute_force"] == 2);
  CHECK(r.payload["modulus"]["residue_spectrum"] == json{{"0", "4"}, {"1", "2"}, {"2", "2"}});
  CHECK(r.payload["modulus"]["spectral_residues"]["0"]["rounded"] == "4");
  CHECK(r.payload["modulus"]["variance_divisible_exact"] == "8");
  CHECK(r.payload["line_integral"] == "infinite");

  CHECK(cli::cmd_stats(path, std::nullopt, std::make_pair(std::size_t{0}, std::size_t{0})).status ==
        cli::Status::Error);
  CHECK(cli::cmd_stats(path, 0, std::nullopt).status == cli::Status::Error);
}

TEST_CASE("identity reports both forms") {
  const auto r = cli::cmd_identity(instance_file("id.json", {1, 1}), 0);
  CHECK(r.status == cli::Status::Ok);
  CHECK(r.payload["identity"]["holds"] == true);
  CHECK(r.payload["stated_identity"]["holds"] == false);
  CHECK(r.payload["stated_identity"]["lhs"] == "2");
  CHECK(cli::cmd_identity(instance_file("id2.json", {1, 1}), 4).status == cli::Status::Error);
}

TEST_CASE("reduce writes a family that count reads back") {
  const std::string cnf = write_file("or3.cnf", kOr3);
  const std::string out = (scratch() / "family").string();
  const auto r = cli::cmd_reduce(cnf, {6, 10}, "parsimonious", out);
  check_envelope(r, "reduce");
  REQUIRE(r.status == cli::Status::Ok);
  const json manifest = read_json_file(r.payload["manifest"]);
  CHECK(manifest["variant"] == "parsimonious");
  REQUIRE(manifest["members"].size() == 2);
  CHECK(manifest["count_relation"]["zero_partitions_per_subset"] == 2);
  for (const auto& m : manifest["members"]) {
    const std::string file = (fs::path(out) / m["file"].get<std::string>()).string();
    const InstanceFile inst = load_instance(file);
    CHECK(inst.radix == m["radix"].get<unsigned>());
    const auto c = cli::cmd_count(file, "all");
    CHECK(c.status == cli::Status::Ok);
    CHECK(c.payload["count"] == "14");
  }
}

TEST_CASE("reduce defaults and rejections") {
  const std::string cnf = write_file("or3b.cnf", kOr3);
  json payload;
  const std::string out = (scratch() / "family_default").string();
  CHECK(run_args({"reduce", cnf, "--out", out}, &payload) == 0);
  CHECK(read_json_file(payload["manifest"])["variant"] == "parsimonious");
  CHECK(payload["members"].size() == 4);

  CHECK(cli::cmd_reduce(cnf, {5}, "parsimonious", out).status == cli::Status::Error);
  const auto bad = cli::cmd_reduce(write_file("bad.cnf", "p cnf 2 1\n1 7 0\n"), {6}, "parsimonious", out);
  CHECK(bad.status == cli::Status::Error);
  CHECK(bad.payload["error"].get<std::string>().find("line 2") != std::string::npos);
}

TEST_CASE("estimate") {
  const auto unsat = cli::cmd_estimate(write_file("c.cnf", kContradiction), {}, {6});
  CHECK(unsat.status == cli::Status::Error);

  const auto cert = cli::cmd_estimate(write_file("c2.cnf", kContradiction), default_primes(), default_radices());
  CHECK(cert.status == cli::Status::Certified);
  CHECK(cert.exit_code() == 2);
  CHECK(cert.payload["sat_upper_bound"] == "0");
  CHECK_FALSE(cert.payload["certificates"].empty());
  CHECK(cert.payload["heuristic"]["label"] == "heuristic");

  const auto few = cli::cmd_estimate(write_file("c3.cnf", kContradiction), {2, 3, 5}, {6, 7});
  CHECK(few.status == cli::Status::Ok);
  CHECK(few.payload["verdict"] == "unknown");

  const auto sat = cli::cmd_estimate(write_file("o.cnf", kOr3), default_primes(), default_radices());
  CHECK(sat.status == cli::Status::Ok);
  const mpz_class bound(sat.payload["sat_upper_bound"].get<std::string>());
  CHECK(bound >= 7);
}

TEST_CASE("scan") {
  const auto r = cli::cmd_scan(cli::ScanArgs{});
  check_envelope(r, "scan");
  CHECK(r.status == cli::Status::Ok);
  CHECK(r.payload["report"]["counterexamples"].empty());
  CHECK(r.payload["report"]["max_ratio"] == "1");

  cli::ScanArgs bad;
  bad.n_min = 6;
  bad.n_max = 2;
  CHECK(cli::cmd_scan(bad).status == cli::Status::Error);

  cli::ScanArgs random;
  random.n_min = 8;
  random.n_max = 10;
  random.samples = 200;
  random.seed = 5;
  const auto a = cli::cmd_scan(random);
  const auto b = cli::cmd_scan(random);
  CHECK(a.status == cli::Status::Ok);
  CHECK(without_timings(a.payload) == without_timings(b.payload));
  CHECK(a.payload["report"]["instances_checked"] == 600);
}

TEST_CASE("an injected counterexample is a headline result") {
  ScanReport report = scan_exhaustive(2, 3, 3);
  report.counterexamples.push_back({PartitionInstance{1, 1, 1, 1}, 7, 6});
  const auto r = cli::scan_result(report);
  CHECK(r.status == cli::Status::Counterexample);
  CHECK(r.exit_code() == 3);
  CHECK(r.payload["headline"] == "COUNTEREXAMPLE FOUND");
  CHECK(r.payload["report"]["counterexamples"][0]["count"] == "7");
}

TEST_CASE("command line parsing") {
  json payload;
  CHECK(run_args({"count", instance_file("p.json", {1, 2, 3}), "--method", "dp"}, &payload) == 0);
  CHECK(payload["count"] == "2");

  CHECK(run_args({"scan", "--n-range", "2-4", "--element-bound", "4"}, &payload) == 0);
  CHECK(payload["report"]["n_range"] == json{2, 4});
  CHECK(run_args({"scan", "--n-range", "4-2"}, &payload) == 1);
  CHECK(run_args({"scan", "--n-range", "x"}, &payload) == 1);

  CHECK(run_args({"stats", instance_file("q.json", {1, 2, 3}), "--pair", "0", "2"}, &payload) == 0);
  CHECK(payload["correlation"]["sign_sum"] == "-2");

  std::string text;
  CHECK(run_args({"count", instance_file("r.json", {1, 1}), "--format", "text"}, nullptr, &text) == 0);
  CHECK(text.rfind("count: ok", 0) == 0);

  CHECK(run_args({"estimate", write_file("e.cnf", kContradiction)}, &payload) == 2);
  CHECK(payload["status"] == "certified");

  std::ostringstream out, err;
  std::string prog = "zpart", bogus = "bogus";
  char* argv[] = {prog.data(), bogus.data()};
  CHECK(cli::run(2, argv, out, err) == 1);
}

TEST_CASE("binary exit codes") {
  CHECK(run_binary("count " + instance_file("bin.json", {1, 2, 3})) == 0);
  CHECK(run_binary("count " + (scratch() / "nope.json").string()) == 1);
  CHECK(run_binary("estimate " + write_file("bin.cnf", kContradiction)) == 2);
  CHECK(run_binary("--help") == 0);
}
