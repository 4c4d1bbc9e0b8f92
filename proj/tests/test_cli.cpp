// End-to-end checks of the command-line tool: output text, JSON round trips,
// and the exit-code contract (the only machine contract for verdicts).

#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "test_support.hpp"

using knotpoly::Presentation;

namespace {

struct RunResult {
  int exit_code;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  static int counter = 0;
  std::string tmp = "cli_out_" + std::to_string(counter++) + ".txt";
  std::string cmd = std::string(KNOTPOLY_CLI_PATH) + " " + args + " > " + tmp + " 2>/dev/null";
  int status = std::system(cmd.c_str());
  std::ifstream in(tmp);
  std::ostringstream ss;
  ss << in.rdbuf();
  std::remove(tmp.c_str());
  int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return {code, ss.str()};
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  out << content;
}

}  // namespace

TEST_CASE("cli alexander") {
  auto r = run_cli("alexander --knot 3_1");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("1 - t + t^2") != std::string::npos);

  auto u = run_cli("alexander --knot unknot");
  CHECK(u.exit_code == 0);
  CHECK(u.out.find("delta = 1") != std::string::npos);

  SECTION("PD file input with reduction mod 2") {
    write_file("trefoil_test.pd", "# trefoil\nPD[X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)]\n");
    auto m = run_cli("alexander --pd trefoil_test.pd --mod 2");
    CHECK(m.exit_code == 0);
    CHECK(m.out.find("1 + t + t^2") != std::string::npos);
    std::remove("trefoil_test.pd");
  }
  SECTION("presentation file input") {
    write_file("trefoil_test.pres", "gens: x y; rels: x y x y^-1 x^-1 y^-1\n");
    auto m = run_cli("alexander --pres trefoil_test.pres");
    CHECK(m.exit_code == 0);
    CHECK(m.out.find("1 - t + t^2") != std::string::npos);
    std::remove("trefoil_test.pres");
  }
  SECTION("parse and usage errors exit with code 2") {
    CHECK(run_cli("alexander --knot nonexistent_knot").exit_code == 2);
    write_file("bad_test.pd", "PD[X(1,2,3)]\n");
    CHECK(run_cli("alexander --pd bad_test.pd").exit_code == 2);
    std::remove("bad_test.pd");
    CHECK(run_cli("alexander").exit_code == 2);
    CHECK(run_cli("").exit_code == 2);             // missing subcommand
    CHECK(run_cli("--help").exit_code == 0);
    CHECK(run_cli("obstruct --knot 3_1").exit_code == 2);  // --p required
  }
}

TEST_CASE("cli obstruct exit codes") {
  CHECK(run_cli("obstruct --knot 3_1 --p 3 --r 1").exit_code == 0);
  CHECK(run_cli("obstruct --knot 4_1 --p 3 --r 1").exit_code == 1);
  CHECK(run_cli("obstruct --knot 3_1 --p 2 --r 1 --twisted 1").exit_code == 0);

  auto r = run_cli("obstruct --knot 3_1 --p 3 --r 1");
  CHECK(r.out.find("lambda = 2") != std::string::npos);
  CHECK(r.out.find("consistent-with-period") != std::string::npos);
  auto n = run_cli("obstruct --knot 4_1 --p 3 --r 1");
  CHECK(n.out.find("period-excluded-within-caps") != std::string::npos);
}

TEST_CASE("cli twisted") {
  auto r = run_cli("twisted --knot 3_1 --search 3 1");
  CHECK(r.exit_code == 0);
  // two scalar representations, each listing its polynomial
  CHECK(r.out.find("rep (p=3, n=1)") != std::string::npos);

  SECTION("rep file and --mod-check") {
    Presentation pres = knotpoly::wirtinger(knotpoly::catalog_get("3_1").pd);
    write_file("trivial_test.rep",
               knotpoly::write_representation(knotpoly::trivial_representation(pres, 5)));
    auto m = run_cli("twisted --knot 3_1 --rep trivial_test.rep --mod-check");
    CHECK(m.exit_code == 0);
    CHECK(m.out.find("(matches)") != std::string::npos);
    std::remove("trivial_test.rep");
  }
  SECTION("unknot with a rep file") {
    Presentation pres = knotpoly::wirtinger(knotpoly::catalog_get("unknot").pd);
    knotpoly::FpMat b(2, 2);
    b.at(0, 0) = 0;
    b.at(0, 1) = 1;
    b.at(1, 0) = 1;
    b.at(1, 1) = 1;
    write_file("b_test.rep", knotpoly::write_representation(
                                 knotpoly::validate_representation(pres, 2, 2, {b})));
    auto m = run_cli("twisted --knot unknot --rep b_test.rep");
    CHECK(m.exit_code == 0);
    CHECK(m.out.find("delta = 1\n") != std::string::npos);
    std::remove("b_test.rep");
  }
}

TEST_CASE("cli verify") {
  auto rel = run_cli("verify rel --knot hopf");
  CHECK(rel.exit_code == 0);
  CHECK(rel.out.find("equal up to unit") != std::string::npos);

  auto mura = run_cli("verify murasugi --knot 3_1 --kbar-knot unknot --lambda 2 --p 3 --r 1");
  CHECK(mura.exit_code == 0);
  CHECK(mura.out.find("verdict: equal") != std::string::npos);

  SECTION("twisted verify through rep files") {
    Presentation trefoil = knotpoly::wirtinger(knotpoly::catalog_get("3_1").pd);
    write_file("k_test.rep",
               knotpoly::write_representation(knotpoly::trivial_representation(trefoil, 3)));
    write_file("kbar_test.pres", "gens: x; rels:\n");
    Presentation unknot = knotpoly::parse_presentation("gens: x; rels:");
    write_file("kbar_test.rep",
               knotpoly::write_representation(knotpoly::trivial_representation(unknot, 3)));
    auto tv = run_cli(
        "verify twisted --knot 3_1 --kbar-pres kbar_test.pres --rep k_test.rep "
        "--repbar kbar_test.rep --la-word \"x1^2\" --lambda 2 --p 3 --r 1");
    CHECK(tv.exit_code == 0);
    CHECK(tv.out.find("main-form") != std::string::npos);
    CHECK(tv.out.find("NOT equal") == std::string::npos);
    std::remove("k_test.rep");
    std::remove("kbar_test.pres");
    std::remove("kbar_test.rep");
  }
}

TEST_CASE("cli json output round-trips byte-identically") {
  for (const char* args : {"alexander --knot 3_1 --format json",
                           "obstruct --knot 3_1 --p 3 --r 1 --format json",
                           "verify rel --knot t2_4 --format json",
                           "twisted --knot 3_1 --search 3 1 --format json"}) {
    auto r = run_cli(args);
    INFO(args);
    nlohmann::ordered_json parsed = nlohmann::ordered_json::parse(r.out);
    CHECK(parsed.dump(2) + "\n" == r.out);
  }
}

TEST_CASE("cli caps environment variable") {
  // restricting lambda_max below the witness kills it: verdict flips
  std::string cmd = std::string("KNOT_OBSTRUCT_CAPS=lambda_max=1 ") + KNOTPOLY_CLI_PATH +
                    " obstruct --knot 3_1 --p 3 --r 1 > cli_env_out.txt 2>/dev/null";
  int status = std::system(cmd.c_str());
  CHECK(WEXITSTATUS(status) == 1);
  std::remove("cli_env_out.txt");
}
