#include "cli.hpp"

#include "topk/csv.hpp"

#include <doctest.h>

#include <filesystem>
#include <sstream>

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    args.insert(args.begin(), "topk");
    std::ostringstream out, err;
    const int code = topk::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

const std::string kExample = TOPK_TEST_DATA "/example1.soc";

}  // namespace

TEST_CASE("winner") {
    CHECK(run({"winner", "--rule", "copeland@k=2", "--profile", kExample}).out == "d\n");
    CHECK(run({"winner", "--rule", "borda@k=1", "--profile", kExample}).out == "a\n");
    CHECK(run({"winner", "--rule", "stv", "--profile", kExample}).out == "c\n");
    CHECK(run({"winner", "--rule", "maximin@k=2", "--profile", kExample, "--tiebreak", "3,2,1,0"}).out == "d\n");
}

TEST_CASE("bounds") {
    const auto r = run({"bounds", "--rule", "borda:zero", "--m", "4", "--k", "2"});
    CHECK(r.code == 0);
    CHECK(r.out == "lower=22/15 upper=22/15\n");
    CHECK(run({"bounds", "--rule", "copeland", "--m", "5", "--k", "2"}).out == "lower=inf upper=inf\n");
    const auto t = run({"bounds", "--table", "--rule", "borda:zero,maximin", "--m-min", "4", "--m-max", "5"});
    CHECK(t.out.starts_with("m,k,rule,lower,upper,attained\n4,2,borda:zero,22/15,22/15,22/15\n4,2,maximin,2,3,2\n"));
}

TEST_CASE("sample, truncate and parse-check") {
    const auto dir = std::filesystem::temp_directory_path() / "topk_cli_test";
    std::filesystem::create_directories(dir);
    const auto path = (dir / "p.soc").string();
    CHECK(run({"sample", "--m", "5", "--phi", "0.6", "--n", "40", "--seed", "3", "--out", path}).code == 0);
    const auto again = run({"sample", "--m", "5", "--phi", "0.6", "--n", "40", "--seed", "3"});
    const auto check = run({"parse-check", "--profile", path});
    CHECK(check.out == "m=5 n=40 unique=" + check.out.substr(check.out.find("unique=") + 7));
    CHECK(check.out.find("complete=yes") != std::string::npos);
    const auto trunc = run({"truncate", "--profile", path, "--k", "2"});
    CHECK(trunc.code == 0);
    CHECK(again.out.starts_with("5\n1,x1\n"));
    std::filesystem::remove_all(dir);
}

TEST_CASE("adversarial") {
    const auto r = run({"adversarial", "--rule", "maximin", "--m", "5", "--k", "2"});
    CHECK(r.code == 0);
    CHECK(r.err.find("computed_ratio=3") != std::string::npos);
    CHECK(r.out.starts_with("5\n"));
}

TEST_CASE("experiment") {
    const auto r = run({"experiment", "success", "--model", "mallows", "--m", "5", "--phi", "0.7", "--n", "50", "--k",
                        "1,4", "--rule", "borda:avg,copeland", "--trials", "30", "--seed", "42", "--workers", "3"});
    CHECK(r.code == 0);
    const auto t = topk::parse_csv(r.out);
    CHECK(t.header == std::vector<std::string>{"rule", "k", "phi", "n", "trials", "seed", "rate"});
    CHECK(t.rows.size() == 4);
    CHECK(t.rows[1] == std::vector<std::string>{"borda:avg", "4", "0.7", "50", "30", "42", "1.0000"});
    const auto again = run({"experiment", "success", "--model", "mallows", "--m", "5", "--phi", "0.7", "--n", "50",
                            "--k", "1,4", "--rule", "borda:avg,copeland", "--trials", "30", "--seed", "42"});
    CHECK(again.out == r.out);

    const auto table1 = run({"experiment", "success", "--model", "mallows", "--m", "7", "--phi", "0.7", "--n", "500",
                             "--k", "1", "--rule", "borda:avg", "--trials", "1000", "--seed", "42"});
    const auto cell = topk::parse_csv(table1.out);
    REQUIRE(cell.rows.size() == 1);
    CHECK(std::stod(cell.rows[0][6]) >= 0.99);

    CHECK(run({"experiment", "ratio", "--m", "5", "--k", "2", "--rule", "rp", "--seed", "1", "--trials", "2"}).code == 1);
    CHECK(run({"experiment", "min-k", "--m", "4", "--phi", "0.5", "--n", "20", "--rule", "borda", "--seed", "1",
               "--trials", "5"})
              .out.starts_with("rule,min_k,phi,n,trials,seed\n"));
    CHECK(run({"experiment", "real-sweep", "--data", kExample, "--n-star", "10,62", "--k", "1,3", "--rule", "stv",
               "--seed", "4", "--trials", "20"})
              .out.starts_with("rule,k,n_star,trials,seed,rate\n"));
}

TEST_CASE("exit codes") {
    CHECK(run({"--help"}).code == 0);
    CHECK(run({"winner", "--help"}).code == 0);
    CHECK(run({}).code == 2);
    CHECK(run({"winner", "--rule", "borda", "--profile", kExample, "--bogus"}).code == 2);
    CHECK(run({"winner", "--rule", "bordaa", "--profile", kExample}).code == 2);
    CHECK(run({"winner", "--rule", "borda", "--profile", "/nonexistent.soc"}).code == 2);
    CHECK(run({"bounds", "--rule", "borda:zero", "--m", "4", "--k", "3"}).code == 1);
    CHECK(run({"bounds", "--rule", "rp", "--m", "5", "--k", "2"}).code == 1);
    CHECK(run({"winner", "--rule", "borda@k=9", "--profile", kExample}).code == 1);
    CHECK(run({"winner", "--rule", "borda", "--profile", kExample, "--tiebreak", "0,1"}).code == 1);
}
