// Drives the installed qcalc binary end to end. The harness exports the
// binary path through QCALC_BIN.

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace {

struct CmdResult {
    int exit_code = -1;
    std::string output;
};

std::string binary_path() {
    const char* bin = std::getenv("QCALC_BIN");
    REQUIRE_MESSAGE(bin != nullptr, "QCALC_BIN must point at the qcalc binary");
    return bin;
}

CmdResult run_cli(const std::string& args, bool merge_stderr = false) {
    const std::string cmd =
        binary_path() + " " + args + (merge_stderr ? " 2>&1" : " 2>/dev/null");
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    CmdResult result;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) {
        result.output.append(buf, n);
    }
    const int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

}  // namespace

TEST_CASE("scalar bracket output") {
    const auto r = run_cli("qnum --q 0.5 --n 3");
    CHECK(r.exit_code == 0);
    CHECK(r.output == "5.25\n");
}

TEST_CASE("exit code 1 on a rejected deformation parameter") {
    const auto r = run_cli("qnum --q 1.0 --n 3", true);
    CHECK(r.exit_code == 1);
    CHECK(r.output.find("q must lie in (0,1)") != std::string::npos);
}

TEST_CASE("exit code 1 on a derivative at the origin") {
    const auto r = run_cli("deriv --q 0.5 --fn poly:0,1 --at 0", true);
    CHECK(r.exit_code == 1);
    CHECK(r.output.find("undefined at 0") != std::string::npos);
}

TEST_CASE("exit code 2 on usage errors") {
    CHECK(run_cli("bogus").exit_code == 2);
    CHECK(run_cli("qnum --q 0.5 --n 3 --no-such-flag").exit_code == 2);
    CHECK(run_cli("qnum --n 3").exit_code == 2);          // missing required --q
    CHECK(run_cli("deriv --q 0.5 --fn wat:1 --at 1").exit_code == 2);
    CHECK(run_cli("").exit_code == 2);                    // no subcommand
    CHECK(run_cli("--help").exit_code == 0);
    // conflicting integral forms
    CHECK(run_cli("integrate --q 0.5 --fn poly:0,1 --improper --b 1").exit_code == 2);
    CHECK(run_cli("integrate --q 0.5 --fn poly:0,1 --improper --real-line").exit_code == 2);
}

TEST_CASE("exit code 3 on forced divergence") {
    CHECK(run_cli("special --q 0.5 --fn qexp --x 5 --max-terms 3").exit_code == 3);
    CHECK(run_cli("integrate --q 0.5 --fn named:const:1 --b 1 --max-terms 2 --tol 1e-30")
              .exit_code == 3);
}

TEST_CASE("integral values through the grammar") {
    const auto linear = run_cli("integrate --q 0.5 --b 1 --fn poly:0,1");
    CHECK(linear.exit_code == 0);
    CHECK(std::abs(std::strtod(linear.output.c_str(), nullptr) - 0.4) <= 1e-11);

    const auto interval = run_cli("integrate --q 0.5 --a 0.5 --b 1 --fn poly:0,1");
    CHECK(std::abs(std::strtod(interval.output.c_str(), nullptr) - 0.3) <= 1e-10);

    const auto constant = run_cli("integrate --q 0.5 --b 2 --fn named:const:1.5");
    CHECK(std::abs(std::strtod(constant.output.c_str(), nullptr) - 3.0) <= 1e-10);

    // the decaying built-in converges on both unbounded forms, and the
    // two-sided value of an even function doubles the one-sided one
    const auto improper = run_cli("integrate --q 0.5 --improper --fn named:gauss");
    const auto real_line = run_cli("integrate --q 0.5 --real-line --fn named:gauss");
    CHECK(improper.exit_code == 0);
    CHECK(real_line.exit_code == 0);
    const double one_sided = std::strtod(improper.output.c_str(), nullptr);
    const double two_sided = std::strtod(real_line.output.c_str(), nullptr);
    CHECK(std::abs(two_sided - 2.0 * one_sided) <= 1e-12);
}

TEST_CASE("csv tables carry headers and full-precision values") {
    const auto deriv = run_cli("deriv --q 0.5 --fn poly:0,0,0,1 --at 1,2");
    CHECK(deriv.exit_code == 0);
    CHECK(deriv.output.rfind("x,derivative\n", 0) == 0);
    CHECK(deriv.output.find("\n1,5.25\n") != std::string::npos);

    const auto lat = run_cli("lattice --q 0.5 --scale 1 --n-lo 0 --n-hi 2");
    CHECK(lat.output.rfind("n,location,weight,f_value,term\n", 0) == 0);
    CHECK(lat.output.find("0,0.5,0.75,1,0.75") != std::string::npos);
    CHECK(lat.output.find("2,0.03125,0.046875,1,0.046875") != std::string::npos);

    // 17 significant digits survive the round trip
    const auto fine = run_cli("qnum --q 0.3 --n 7");
    const double parsed = std::strtod(fine.output.c_str(), nullptr);
    const auto fine2 = run_cli("qnum --q 0.3 --n 7");
    CHECK(std::strtod(fine2.output.c_str(), nullptr) == parsed);
}

TEST_CASE("json output round-trips binary64") {
    const auto r = run_cli("qnum --q 0.5 --n 3 --format json");
    CHECK(r.exit_code == 0);
    const auto doc = nlohmann::json::parse(r.output);
    CHECK(doc.contains("params"));
    CHECK(doc.contains("rows"));
    CHECK(doc.contains("flags"));
    CHECK(doc["rows"][0]["q_bracket"].get<double>() == 5.25);
    CHECK(doc["params"]["q"].get<double>() == 0.5);

    const auto integral = run_cli("integrate --q 0.5 --b 1 --fn poly:0,1 --format json");
    const auto idoc = nlohmann::json::parse(integral.output);
    CHECK(idoc["rows"][0]["converged"].get<bool>());
    CHECK(std::abs(idoc["rows"][0]["value"].get<double>() - 0.4) <= 1e-11);
}

TEST_CASE("repeated invocations are byte-identical") {
    const std::string cmds[] = {
        "special --q 0.9 --fn qsin --x 0.25,0.5,1",
        "counterexample --q 0.5 --a 0.8 --b 1",
        "fock --q 0.5 --dim 12 --what residuals",
        "integrate --q 0.3 --fn poly:1,0,2 --b 7 --format json",
        "solve --q 0.5 --what uniqueness --f poly:0,1 --g poly:0.1,1 --b 1 --depth 5",
        "limit-study",
    };
    for (const auto& cmd : cmds) {
        const auto first = run_cli(cmd);
        const auto second = run_cli(cmd);
        CHECK(first.exit_code == 0);
        CHECK(first.exit_code == second.exit_code);
        CHECK(first.output == second.output);
        CHECK_FALSE(first.output.empty());
    }
}

TEST_CASE("fock and solve subcommands emit the documented tables") {
    const auto res = run_cli("fock --q 0.5 --dim 40 --what residuals");
    CHECK(res.output.rfind("r1,r2,r3\n", 0) == 0);
    // all three residuals tiny
    double r1, r2, r3;
    CHECK(std::sscanf(res.output.c_str(), "r1,r2,r3\n%lf,%lf,%lf", &r1, &r2, &r3) == 3);
    CHECK(r1 <= 1e-10);
    CHECK(r2 <= 1e-10);
    CHECK(r3 <= 1e-10);

    const auto rec = run_cli("solve --q 0.5 --what recover --F poly:0,1 --b 1 --depth 3");
    CHECK(rec.output.rfind("point,h_value\n", 0) == 0);
    CHECK(rec.output.find("0.5,1") != std::string::npos);

    const auto uniq =
        run_cli("solve --q 0.5 --what uniqueness --f poly:0,1 --g poly:0,1 --b 1 --depth 5");
    CHECK(uniq.output.rfind("same_class,integral_gap\n", 0) == 0);
    CHECK(uniq.output.find("true,0") != std::string::npos);
}

TEST_CASE("output lands in --output when given") {
    const std::string path = "cli_test_output.csv";
    std::remove(path.c_str());
    const auto r = run_cli("qnum --q 0.5 --n 4 --table --output " + path);
    CHECK(r.exit_code == 0);
    CHECK(r.output.empty());
    FILE* f = std::fopen(path.c_str(), "rb");
    REQUIRE(f != nullptr);
    char buf[512];
    const std::size_t n = fread(buf, 1, sizeof(buf), f);
    std::fclose(f);
    std::remove(path.c_str());
    const std::string content(buf, n);
    CHECK(content.rfind("n,q_bracket,q_factorial,classical_gap\n", 0) == 0);
    CHECK(content.find("3,5.25,13.125,2.25") != std::string::npos);
}
