#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <qcolor/cli.hpp>

using namespace qcolor;

namespace {

struct RunResult {
    int code = 0;
    std::string out;
    std::string err;
};

RunResult run_cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(std::move(args), out, err);
    return {code, out.str(), err.str()};
}

std::string golden_path(const std::string& name) {
    return std::string(QCOLOR_GOLDEN_DIR) + "/" + name;
}

void check_golden(const std::string& name, const std::string& actual) {
    if (std::getenv("QCOLOR_REGEN_GOLDEN")) {
        std::ofstream f(golden_path(name), std::ios::binary);
        f << actual;
        return;
    }
    std::ifstream f(golden_path(name), std::ios::binary);
    INFO("golden file " << golden_path(name) << " (set QCOLOR_REGEN_GOLDEN=1 to regenerate)");
    REQUIRE(f.good());
    std::stringstream buf;
    buf << f.rdbuf();
    REQUIRE(actual == buf.str());
}

}  // namespace

TEST_CASE("progression strings") {
    const auto p = cli::parse_progression("3n+2");
    REQUIRE(p.base == 3);
    REQUIRE_FALSE(p.power_of_ell);
    REQUIRE(p.start == 2);

    const auto q = cli::parse_progression("9n+2");
    REQUIRE(q.base == 9);

    const auto r = cli::parse_progression("3^l n+2");
    REQUIRE(r.base == 3);
    REQUIRE(r.power_of_ell);
    REQUIRE(r.start == 2);

    REQUIRE(cli::parse_progression(" 12 n + 0 ").base == 12);
    REQUIRE_THROWS_AS(cli::parse_progression("n+2"), std::invalid_argument);
    REQUIRE_THROWS_AS(cli::parse_progression("3n-2"), std::invalid_argument);
    REQUIRE_THROWS_AS(cli::parse_progression("0n+2"), std::invalid_argument);
    REQUIRE(cli::checked_pow(3, 4) == 81);
}

TEST_CASE("exit codes follow the 0/1/2 contract") {
    SECTION("holding congruence exits 0") {
        const auto r = run_cli({"congruence", "--k", "9", "--j", "2", "--mod", "27",
                                "--progression", "3n+2", "--max", "50"});
        REQUIRE(r.code == 0);
    }
    SECTION("witnessed noncongruence exits 1") {
        const auto r = run_cli({"congruence", "--k", "9", "--j", "1", "--mod", "27",
                                "--progression", "3n+2", "--max", "50"});
        REQUIRE(r.code == 1);
        REQUIRE(r.out.find("index 2: residue 18") != std::string::npos);
    }
    SECTION("usage errors exit 2") {
        REQUIRE(run_cli({"congruence", "--j", "1", "--no-such-flag"}).code == 2);
        REQUIRE(run_cli({"congruence"}).code == 2);           // missing required --j
        REQUIRE(run_cli({"box", "--M", "2", "--N", "2"}).code == 2);  // f-sizes needs --r
        REQUIRE(run_cli({"nonsense"}).code == 2);
        REQUIRE(run_cli({}).code == 2);
    }
    SECTION("help exits 0") {
        REQUIRE(run_cli({"--help"}).code == 0);
    }
    SECTION("clean oracle suites exit 0") {
        REQUIRE(run_cli({"oracle-check", "ckj", "--kmax", "5", "--nmax", "20"}).code == 0);
        REQUIRE(run_cli({"oracle-check", "box", "--Mmax", "6", "--Nmax", "6"}).code == 0);
        REQUIRE(run_cli({"oracle-check", "theorem2", "--p", "3", "--nmax", "100"}).code == 0);
        REQUIRE(run_cli({"oracle-check", "merca-limit", "--Mmax", "6", "--order", "20"}).code == 0);
        REQUIRE(run_cli({"oracle-check", "bogus"}).code == 2);
    }
}

TEST_CASE("reports are byte-identical across runs") {
    const std::vector<std::string> args = {"--format", "json", "unimodal", "--M", "4",
                                           "--N", "3", "--k", "3", "--n", "5"};
    const auto a = run_cli(args);
    const auto b = run_cli(args);
    REQUIRE(a.code == 0);
    REQUIRE(a.out == b.out);

    // thread count must not change the bytes either
    const auto c = run_cli({"--threads", "1", "--format", "json", "unimodal", "--M", "4", "--N",
                            "3", "--k", "3", "--n", "5"});
    REQUIRE(c.out == a.out);
}

TEST_CASE("golden reports") {
    SECTION("series json") {
        const auto r = run_cli(
            {"--format", "json", "series", "--family", "ckj", "--k", "2", "--j", "1", "--order", "8"});
        REQUIRE(r.code == 0);
        check_golden("series_ckj.json.golden", r.out);
    }
    SECTION("series csv") {
        const auto r = run_cli(
            {"--format", "csv", "series", "--family", "pochhammer", "--d", "1", "--order", "10"});
        REQUIRE(r.code == 0);
        check_golden("series_pochhammer.csv.golden", r.out);
    }
    SECTION("congruence json") {
        const auto r = run_cli({"--format", "json", "congruence", "--k", "9", "--j", "1", "--mod",
                                "27", "--progression", "3n+2", "--max", "50"});
        REQUIRE(r.code == 1);
        check_golden("congruence_j1.json.golden", r.out);
    }
    SECTION("congruence witness scan json") {
        const auto r = run_cli({"--format", "json", "congruence", "--k", "9", "--j", "4", "--mod",
                                "27", "--witness-scan", "--ell-max", "2", "--max", "60"});
        REQUIRE(r.code == 1);
        check_golden("congruence_witness_scan.json.golden", r.out);
    }
    SECTION("theorem2 json") {
        const auto r = run_cli({"--format", "json", "theorem2", "--p", "2", "--nmax", "12"});
        REQUIRE(r.code == 0);
        check_golden("theorem2_p2.json.golden", r.out);
    }
    SECTION("box json") {
        const auto r = run_cli({"--format", "json", "box", "--M", "2", "--N", "2", "--r", "1"});
        REQUIRE(r.code == 0);
        check_golden("box_f_sizes.json.golden", r.out);
    }
    SECTION("unimodal json") {
        const auto r = run_cli({"--format", "json", "unimodal", "--M", "3", "--N", "3", "--k",
                                "3", "--n", "4", "--dirbound", "2"});
        REQUIRE(r.code == 0);
        check_golden("unimodal_3x3.json.golden", r.out);
    }
    SECTION("unimodal text with the slant cut") {
        const auto r = run_cli({"unimodal", "--M", "11", "--N", "7", "--k", "3", "--n", "14",
                                "--specialize", "3", "--dirbound", "2", "--cut-start", "0,2",
                                "--cut-dir", "2,-1"});
        REQUIRE(r.code == 0);
        check_golden("unimodal_11x7.text.golden", r.out);
    }
    SECTION("unimodal csv") {
        const auto r = run_cli(
            {"--format", "csv", "unimodal", "--M", "11", "--N", "7", "--k", "3", "--n", "14"});
        REQUIRE(r.code == 0);
        check_golden("unimodal_11x7.csv.golden", r.out);
    }
    SECTION("oracle-check json") {
        const auto r = run_cli(
            {"--format", "json", "oracle-check", "ckj", "--kmax", "2", "--nmax", "6"});
        REQUIRE(r.code == 0);
        check_golden("oracle_ckj.json.golden", r.out);
    }
}

TEST_CASE("output file redirection") {
    const std::string path = "cli_test_report.tmp.json";
    const auto r = run_cli({"--format", "json", "--out", path, "box", "--M", "1", "--N", "1",
                            "--r", "0"});
    REQUIRE(r.code == 0);
    REQUIRE(r.out.empty());
    std::ifstream f(path);
    REQUIRE(f.good());
    std::stringstream buf;
    buf << f.rdbuf();
    REQUIRE(buf.str().find("\"command\": \"box\"") != std::string::npos);
    f.close();
    std::remove(path.c_str());
}

TEST_CASE("truncation ceiling from the environment") {
    setenv(cli::kMaxOrderEnvVar, "100", 1);
    const auto r = run_cli({"congruence", "--k", "9", "--j", "2", "--mod", "27", "--progression",
                            "3n+2", "--max", "200"});
    REQUIRE(r.code == 2);
    REQUIRE(r.err.find("ceiling") != std::string::npos);

    const auto ok = run_cli({"congruence", "--k", "9", "--j", "2", "--mod", "27", "--progression",
                             "3n+2", "--max", "80"});
    REQUIRE(ok.code == 0);

    // a witness scan without --max defaults to a 20000 bound, above this ceiling
    const auto deep = run_cli({"congruence", "--j", "1", "--witness-scan"});
    REQUIRE(deep.code == 2);
    REQUIRE(deep.err.find("20000") != std::string::npos);

    setenv(cli::kMaxOrderEnvVar, "bogus", 1);
    REQUIRE(run_cli({"series", "--order", "10"}).code == 2);
    unsetenv(cli::kMaxOrderEnvVar);

    REQUIRE(run_cli({"series", "--order", "10"}).code == 0);
}

TEST_CASE("eta family validates j") {
    REQUIRE(run_cli({"series", "--family", "eta", "--k", "9", "--j", "8", "--order", "5"}).code ==
            0);
    const auto bad =
        run_cli({"series", "--family", "eta", "--k", "9", "--j", "5", "--order", "5"});
    REQUIRE(bad.code == 2);
    REQUIRE(bad.err.find("eta") != std::string::npos);
}

TEST_CASE("theorem2 command honors the relation switch") {
    REQUIRE(run_cli({"theorem2", "--p", "3", "--nmax", "30", "--relation", "p"}).code == 0);
    REQUIRE(run_cli({"theorem2", "--p", "3", "--nmax", "15", "--relation", "p2"}).code == 0);
    REQUIRE(run_cli({"theorem2", "--p", "3", "--relation", "bogus"}).code == 2);
    REQUIRE(run_cli({"theorem2", "--p", "4", "--nmax", "5"}).code == 2);  // not prime
}
